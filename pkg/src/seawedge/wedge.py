"""The semi-infinite wedge space and its field operators.

A basis wedge ``e_I = e_{i_1} ^ e_{i_2} ^ ...`` has a strictly decreasing
index sequence that eventually runs ``..., k, k-1, k-2, ...``. Every such
sequence differs from the sea ``(-1, -2, -3, ...)`` in finitely many places,
so it is stored as the finite set of positive indices added on top of the sea
(``particles``) and the finite set of negative indices removed from it
(``holes``).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from seawedge._sparse import SparseVector, pruned
from seawedge.vectors import OneParticleVector


def _as_index_tuple(values: Iterable[int], positive: bool, what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise TypeError(f"{what} entries must be ints, got {v!r}")
        v = int(v)
        if (v <= 0) if positive else (v >= 0):
            raise ValueError(f"{what} entries must be {'> 0' if positive else '< 0'}, got {v}")
        out.append(v)
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate entries in {what}: {out}")
    return tuple(sorted(out, reverse=True))


@dataclass(frozen=True, order=True)
class BasisLabel:
    """Index sequence ``I`` encoded by its deviation from the sea.

    Both tuples are kept in decreasing order, which is the order their
    entries appear in the decoded sequence.
    """

    particles: tuple[int, ...] = ()
    holes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "particles", _as_index_tuple(self.particles, True, "particles"))
        object.__setattr__(self, "holes", _as_index_tuple(self.holes, False, "holes"))

    @classmethod
    def vacuum(cls) -> BasisLabel:
        return _VACUUM

    @property
    def charge(self) -> int:
        return len(self.particles) - len(self.holes)

    @property
    def depth(self) -> int:
        """Number of leading entries after which the sequence is the plain tail."""
        deepest = -min(self.holes) if self.holes else 0
        return len(self.particles) + deepest

    def __repr__(self) -> str:
        return f"BasisLabel({set(self.particles) or '{}'}, {set(self.holes) or '{}'})"


_VACUUM = BasisLabel()


def _label(particles: tuple[int, ...], holes: tuple[int, ...]) -> BasisLabel:
    # trusted constructor: tuples already valid and decreasing
    obj = object.__new__(BasisLabel)
    object.__setattr__(obj, "particles", particles)
    object.__setattr__(obj, "holes", holes)
    return obj


def decode_prefix(label: BasisLabel, k: int) -> list[int]:
    """First ``k`` entries of the decoded index sequence. For inspection only."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = list(label.particles[:k])
    holes = set(label.holes)
    j = -1
    while len(out) < k:
        if j not in holes:
            out.append(j)
        j -= 1
    return out


def position_of(label: BasisLabel, j: int) -> int | None:
    """1-based position ``s`` with ``i_s = j``, or ``None`` if ``j`` is absent."""
    if j == 0:
        raise ValueError("mode index 0 does not exist")
    if j > 0:
        if j not in label.particles:
            return None
        return 1 + sum(1 for p in label.particles if p > j)
    if j in label.holes:
        return None
    return len(label.particles) - j - sum(1 for v in label.holes if v > j)


def interior(j: int, label: BasisLabel) -> tuple[int, BasisLabel] | None:
    """``psi(e_j) e_I``: remove ``e_j`` from slot ``s`` with sign ``(-1)^(s+1)``."""
    s = position_of(label, j)
    if s is None:
        return None
    if j > 0:
        new = _label(tuple(p for p in label.particles if p != j), label.holes)
    else:
        k = sum(1 for v in label.holes if v > j)
        new = _label(label.particles, label.holes[:k] + (j,) + label.holes[k:])
    return (1 if s % 2 == 1 else -1), new


def exterior(j: int, label: BasisLabel) -> tuple[int, BasisLabel] | None:
    """``psi*(e_j) e_I``: insert ``e_j`` after the ``s`` entries larger than it, sign ``(-1)^s``."""
    if j == 0:
        raise ValueError("mode index 0 does not exist")
    if j > 0:
        if j in label.particles:
            return None
        s = sum(1 for p in label.particles if p > j)
        new = _label(label.particles[:s] + (j,) + label.particles[s:], label.holes)
    else:
        if j not in label.holes:
            return None
        # sea entries above j are -1..j+1, minus the holes among them
        s = len(label.particles) + (-j - 1) - sum(1 for v in label.holes if v > j)
        new = _label(label.particles, tuple(v for v in label.holes if v != j))
    return (1 if s % 2 == 0 else -1), new


class WedgeVector(SparseVector[BasisLabel]):
    """Finite linear combination of basis wedges."""

    __slots__ = ()

    def __init__(self, terms=()):
        super().__init__(terms)
        for k in self._terms:
            if not isinstance(k, BasisLabel):
                raise TypeError(f"WedgeVector keys must be BasisLabel, got {k!r}")

    @classmethod
    def vacuum(cls) -> WedgeVector:
        """The filled sea ``e_{-1} ^ e_{-2} ^ e_{-3} ^ ...``."""
        return cls._raw({_VACUUM: 1 + 0j})

    def charges(self) -> set[int]:
        return {k.charge for k in self.keys()}


def inner(v: WedgeVector, w: WedgeVector) -> complex:
    return v.inner(w)


def _apply_modes(f: OneParticleVector, v: WedgeVector, op, conj: bool) -> WedgeVector:
    acc: dict = {}
    for j, c in f.items():
        c = c.conjugate() if conj else c
        for label, amp in v.items():
            hit = op(j, label)
            if hit is not None:
                sign, new = hit
                acc[new] = acc.get(new, 0j) + sign * c * amp
    return WedgeVector._raw(pruned(acc))


def psi(f: OneParticleVector, v: WedgeVector) -> WedgeVector:
    """Interior multiplication ``psi(f) v``; anti-linear in ``f``."""
    return _apply_modes(f, v, interior, conj=True)


def psi_star(f: OneParticleVector, v: WedgeVector) -> WedgeVector:
    """Exterior multiplication ``psi*(f) v``; linear in ``f``."""
    return _apply_modes(f, v, exterior, conj=False)


def _require_positive(h: OneParticleVector) -> None:
    if not h.is_positive():
        raise ValueError(f"expected a positive energy vector, got support {h.support()}")


def _require_negative(g: OneParticleVector) -> None:
    if not g.is_negative():
        raise ValueError(f"expected a negative energy vector, got support {g.support()}")


# Particle and antiparticle operators. Antiparticles are holes in the sea:
# creating one removes the negative energy mode C h.


def a(h: OneParticleVector, v: WedgeVector) -> WedgeVector:
    _require_positive(h)
    return psi(h, v)


def a_star(h: OneParticleVector, v: WedgeVector) -> WedgeVector:
    _require_positive(h)
    return psi_star(h, v)


def b(h: OneParticleVector, v: WedgeVector) -> WedgeVector:
    _require_positive(h)
    return psi_star(h.conjugate(), v)


def b_star(h: OneParticleVector, v: WedgeVector) -> WedgeVector:
    _require_positive(h)
    return psi(h.conjugate(), v)


def generated_vector(hs: Sequence[OneParticleVector], gs: Sequence[OneParticleVector]) -> WedgeVector:
    """``psi*(h_1)...psi*(h_n) psi(g_1)...psi(g_m) Omega_D``."""
    for h in hs:
        _require_positive(h)
    for g in gs:
        _require_negative(g)
    v = WedgeVector.vacuum()
    for g in reversed(gs):
        v = psi(g, v)
    for h in reversed(hs):
        v = psi_star(h, v)
    return v


def gram_matrix(rows: Sequence[OneParticleVector], cols: Sequence[OneParticleVector]) -> np.ndarray:
    """``M[i, k] = (rows[i], cols[k])``."""
    return np.array([[r.inner(c) for c in cols] for r in rows], dtype=complex).reshape(len(rows), len(cols))


def gram_det(rows: Sequence[OneParticleVector], cols: Sequence[OneParticleVector]) -> complex:
    """Determinant of the Gram matrix; 0 when the lengths differ."""
    if len(rows) != len(cols):
        return 0j
    if not rows:
        return 1 + 0j
    return complex(np.linalg.det(gram_matrix(rows, cols)))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def gram_det_permutation_sum(rows: Sequence[OneParticleVector], cols: Sequence[OneParticleVector]) -> complex:
    """``sum_pi sgn(pi) prod_i (rows[i], cols[pi(i)])`` by explicit enumeration.

    Cost is ``n!``; meant as an oracle for ``gram_det`` at small ``n``.
    """
    if len(rows) != len(cols):
        return 0j
    m = gram_matrix(rows, cols)
    n = len(rows)
    total = 0j
    for perm in itertools.permutations(range(n)):
        term = complex(_perm_sign(perm))
        for i in range(n):
            term *= m[i, perm[i]]
        total += term
    return total


def generated_inner(
    hs1: Sequence[OneParticleVector],
    gs1: Sequence[OneParticleVector],
    hs2: Sequence[OneParticleVector],
    gs2: Sequence[OneParticleVector],
) -> complex:
    """Closed form of ``(generated_vector(hs1, gs1), generated_vector(hs2, gs2))``.

    ``psi(g)`` is anti-linear in ``g``, so the negative energy factor is the
    Gram determinant with the two families swapped.
    """
    return gram_det(hs1, hs2) * gram_det(gs2, gs1)


def sea_field(t: float, f: OneParticleVector, v: WedgeVector, basis) -> WedgeVector:
    """``psi(t, f) v = psi(e^{iHt} f) v``."""
    from seawedge.dirac import evolve

    return psi(evolve(f, t, basis), v)


def sea_field_star(t: float, f: OneParticleVector, v: WedgeVector, basis) -> WedgeVector:
    from seawedge.dirac import evolve

    return psi_star(evolve(f, t, basis), v)
