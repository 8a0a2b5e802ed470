"""Two-factor fermion Fock space ``F(H+) (x) F(H+)`` for particles and antiparticles.

Occupation sets are stored in increasing order. The basis state with
occupations ``(k_1 < k_2 < ...)`` in one factor is
``alpha*(e_{k_1}) alpha*(e_{k_2}) ... Omega_0``, so creating or removing
mode ``k`` picks up ``(-1)`` per occupied mode below ``k``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from seawedge._sparse import SparseVector, pruned
from seawedge.vectors import OneParticleVector


def _occupation(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v <= 0:
            raise ValueError(f"{what} entries must be positive ints, got {v!r}")
        out.append(int(v))
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate entries in {what}: {out}")
    return tuple(sorted(out))


def create(occ: tuple[int, ...], k: int) -> tuple[int, tuple[int, ...]] | None:
    if k in occ:
        return None
    below = sum(1 for q in occ if q < k)
    return (-1 if below % 2 else 1), tuple(sorted(occ + (k,)))


def annihilate(occ: tuple[int, ...], k: int) -> tuple[int, tuple[int, ...]] | None:
    if k not in occ:
        return None
    below = sum(1 for q in occ if q < k)
    return (-1 if below % 2 else 1), tuple(q for q in occ if q != k)


class FactorVector(SparseVector[tuple]):
    """Vector in a single factor ``F(H+)``, keyed by occupation tuples."""

    __slots__ = ()

    def __init__(self, terms=()):
        items = terms.items() if hasattr(terms, "items") else terms
        super().__init__((_occupation(k, "occupation"), c) for k, c in items)

    @classmethod
    def vacuum(cls) -> FactorVector:
        return cls._raw({(): 1 + 0j})


def _require_positive(h: OneParticleVector) -> None:
    if not h.is_positive():
        raise ValueError(f"expected a positive energy vector, got support {h.support()}")


def _factor_apply(h: OneParticleVector, v: FactorVector, op, conj: bool) -> FactorVector:
    _require_positive(h)
    acc: dict = {}
    for k, c in h.items():
        c = c.conjugate() if conj else c
        for occ, amp in v.items():
            hit = op(occ, k)
            if hit is not None:
                sign, new = hit
                acc[new] = acc.get(new, 0j) + sign * c * amp
    return FactorVector._raw(pruned(acc))


def alpha(h: OneParticleVector, v: FactorVector) -> FactorVector:
    return _factor_apply(h, v, annihilate, conj=True)


def alpha_star(h: OneParticleVector, v: FactorVector) -> FactorVector:
    return _factor_apply(h, v, create, conj=False)


@dataclass(frozen=True, order=True)
class FockState:
    particles: tuple[int, ...] = ()
    antiparticles: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "particles", _occupation(self.particles, "particles"))
        object.__setattr__(self, "antiparticles", _occupation(self.antiparticles, "antiparticles"))

    @classmethod
    def vacuum(cls) -> FockState:
        return _VACUUM

    def __repr__(self) -> str:
        return f"FockState({set(self.particles) or '{}'}, {set(self.antiparticles) or '{}'})"


_VACUUM = FockState()


class FockVector(SparseVector[FockState]):
    __slots__ = ()

    def __init__(self, terms=()):
        super().__init__(terms)
        for k in self._terms:
            if not isinstance(k, FockState):
                raise TypeError(f"FockVector keys must be FockState, got {k!r}")

    @classmethod
    def vacuum(cls) -> FockVector:
        """``Omega_0 (x) Omega_0``."""
        return cls._raw({_VACUUM: 1 + 0j})

    @classmethod
    def product(cls, left: FactorVector, right: FactorVector) -> FockVector:
        return cls((FockState(p, q), cp * cq) for p, cp in left.items() for q, cq in right.items())


def _fock_apply(h: OneParticleVector, v: FockVector, op, conj: bool, antiparticle: bool) -> FockVector:
    _require_positive(h)
    acc: dict = {}
    for k, c in h.items():
        c = c.conjugate() if conj else c
        for state, amp in v.items():
            if antiparticle:
                hit = op(state.antiparticles, k)
                if hit is None:
                    continue
                sign, new_occ = hit
                # (-1)^N on the particle factor
                if len(state.particles) % 2:
                    sign = -sign
                new = FockState(state.particles, new_occ)
            else:
                hit = op(state.particles, k)
                if hit is None:
                    continue
                sign, new_occ = hit
                new = FockState(new_occ, state.antiparticles)
            acc[new] = acc.get(new, 0j) + sign * c * amp
    return FockVector._raw(pruned(acc))


def a(h: OneParticleVector, v: FockVector) -> FockVector:
    """``alpha(h) (x) I``."""
    return _fock_apply(h, v, annihilate, conj=True, antiparticle=False)


def a_star(h: OneParticleVector, v: FockVector) -> FockVector:
    return _fock_apply(h, v, create, conj=False, antiparticle=False)


def b(h: OneParticleVector, v: FockVector) -> FockVector:
    """``(-1)^N (x) alpha(h)``."""
    return _fock_apply(h, v, annihilate, conj=True, antiparticle=True)


def b_star(h: OneParticleVector, v: FockVector) -> FockVector:
    return _fock_apply(h, v, create, conj=False, antiparticle=True)


def state_energy(state: FockState, basis) -> float:
    """Eigenvalue of ``H'`` on a basis state: summed ``omega`` over both factors."""
    return sum(basis.omega(k) for k in state.particles) + sum(basis.omega(k) for k in state.antiparticles)


def hamiltonian_H_prime(v: FockVector, basis) -> FockVector:
    return FockVector._raw(pruned({s: state_energy(s, basis) * c for s, c in v.items()}))


def evolve_fock(v: FockVector, t: float, basis) -> FockVector:
    """``e^{iH't} v``."""
    return FockVector._raw(pruned({s: np.exp(1j * state_energy(s, basis) * t) * c for s, c in v.items()}))


def _field_parts(t: float, f: OneParticleVector, basis) -> tuple[OneParticleVector, OneParticleVector]:
    from seawedge.dirac import evolve

    # P+ and P- are the positive/negative index supports in the mode basis
    particle = evolve(f.positive_part(), t, basis)
    antiparticle = evolve(f.negative_part().conjugate(), t, basis)
    return particle, antiparticle


def fock_field(t: float, f: OneParticleVector, v: FockVector, basis) -> FockVector:
    """``psi(t, f) = a(e^{iwt} P+ f) + b*(e^{iwt} C P- f)``."""
    particle, antiparticle = _field_parts(t, f, basis)
    return a(particle, v) + b_star(antiparticle, v)


def fock_field_star(t: float, f: OneParticleVector, v: FockVector, basis) -> FockVector:
    particle, antiparticle = _field_parts(t, f, basis)
    return a_star(particle, v) + b(antiparticle, v)
