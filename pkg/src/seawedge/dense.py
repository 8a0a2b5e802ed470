"""Dense Jordan-Wigner matrix realizations on a finite mode window.

These are built from Kronecker products of 2x2 blocks only, independently of
the label arithmetic in ``wedge`` and ``fock``, and serve as the oracle those
modules are checked against.

Basis state ``n`` has mode ``q`` occupied iff bit ``nmodes - 1 - q`` of ``n``
is set, so mode 0 is the most significant bit.
"""

from __future__ import annotations

from functools import cache

import numpy as np
from scipy import sparse

from seawedge.fock import FockState, FockVector
from seawedge.wedge import BasisLabel, WedgeVector


@cache
def jordan_wigner_creations(nmodes: int) -> tuple[sparse.csr_matrix, ...]:
    """Creation matrices with a string of ``Z`` on every earlier mode."""
    id2 = sparse.identity(2, format="csr")
    z = sparse.csr_matrix([[1.0, 0.0], [0.0, -1.0]])
    u = sparse.csr_matrix([[0.0, 0.0], [1.0, 0.0]])
    out = []
    for q in range(nmodes):
        c = sparse.identity(1, format="csr")
        for r in range(nmodes):
            c = sparse.kron(c, z if r < q else (u if r == q else id2), format="csr")
        c.eliminate_zeros()
        out.append(c.astype(complex))
    return tuple(out)


class _Window:
    modes: tuple
    nmodes: int

    @property
    def dim(self) -> int:
        return 1 << self.nmodes

    def creation(self, q: int) -> sparse.csr_matrix:
        return jordan_wigner_creations(self.nmodes)[q]

    def annihilation(self, q: int) -> sparse.csr_matrix:
        return self.creation(q).conj().T.tocsr()

    def _bits_to_index(self, occupied) -> int:
        n = 0
        for q in occupied:
            n |= 1 << (self.nmodes - 1 - q)
        return n

    def _index_to_bits(self, n: int) -> list[int]:
        return [q for q in range(self.nmodes) if n >> (self.nmodes - 1 - q) & 1]


class WedgeWindow(_Window):
    """Modes ``K, ..., 1, -1, ..., -K`` in decreasing order; the sea below ``-K`` is frozen.

    A negative mode counts as occupied unless it is a hole, so the sea vacuum
    is the state with all ``-1..-K`` bits set.
    """

    def __init__(self, K: int):
        if K < 1:
            raise ValueError("K must be >= 1")
        self.K = K
        self.modes = tuple(range(K, 0, -1)) + tuple(range(-1, -K - 1, -1))
        self.nmodes = 2 * K
        self._slot = {m: q for q, m in enumerate(self.modes)}

    def slot(self, j: int) -> int:
        return self._slot[j]

    def contains(self, label: BasisLabel) -> bool:
        return all(p <= self.K for p in label.particles) and all(h >= -self.K for h in label.holes)

    def label_to_index(self, label: BasisLabel) -> int:
        if not self.contains(label):
            raise ValueError(f"{label!r} lies outside window K={self.K}")
        holes = set(label.holes)
        occ = [self._slot[p] for p in label.particles]
        occ += [self._slot[j] for j in range(-1, -self.K - 1, -1) if j not in holes]
        return self._bits_to_index(occ)

    def index_to_label(self, n: int) -> BasisLabel:
        occ = {self.modes[q] for q in self._index_to_bits(n)}
        particles = [m for m in occ if m > 0]
        holes = [j for j in range(-1, -self.K - 1, -1) if j not in occ]
        return BasisLabel(particles, holes)

    def all_labels(self) -> list[BasisLabel]:
        return [self.index_to_label(n) for n in range(self.dim)]

    def to_dense(self, v: WedgeVector) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for label, c in v.items():
            out[self.label_to_index(label)] += c
        return out

    def from_dense(self, x: np.ndarray) -> WedgeVector:
        return WedgeVector({self.index_to_label(n): x[n] for n in np.flatnonzero(x)})

    def psi_star_matrix(self, j: int) -> sparse.csr_matrix:
        return self.creation(self._slot[j])

    def psi_matrix(self, j: int) -> sparse.csr_matrix:
        return self.annihilation(self._slot[j])


class FockWindow(_Window):
    """Particle modes ``1..K`` followed by antiparticle modes ``1..K``.

    The Jordan-Wigner string over the particle block is exactly the
    ``(-1)^N`` twist carried by the antiparticle operators.
    """

    def __init__(self, K: int):
        if K < 1:
            raise ValueError("K must be >= 1")
        self.K = K
        self.modes = tuple(("a", k) for k in range(1, K + 1)) + tuple(("b", k) for k in range(1, K + 1))
        self.nmodes = 2 * K

    def slot(self, kind: str, k: int) -> int:
        return (k - 1) + (self.K if kind == "b" else 0)

    def state_to_index(self, state: FockState) -> int:
        if any(k > self.K for k in state.particles + state.antiparticles):
            raise ValueError(f"{state!r} lies outside window K={self.K}")
        occ = [self.slot("a", k) for k in state.particles] + [self.slot("b", k) for k in state.antiparticles]
        return self._bits_to_index(occ)

    def index_to_state(self, n: int) -> FockState:
        bits = self._index_to_bits(n)
        return FockState([q + 1 for q in bits if q < self.K], [q - self.K + 1 for q in bits if q >= self.K])

    def all_states(self) -> list[FockState]:
        return [self.index_to_state(n) for n in range(self.dim)]

    def to_dense(self, v: FockVector) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for state, c in v.items():
            out[self.state_to_index(state)] += c
        return out

    def from_dense(self, x: np.ndarray) -> FockVector:
        return FockVector({self.index_to_state(n): x[n] for n in np.flatnonzero(x)})

    def a_star_matrix(self, k: int) -> sparse.csr_matrix:
        return self.creation(self.slot("a", k))

    def b_star_matrix(self, k: int) -> sparse.csr_matrix:
        return self.creation(self.slot("b", k))


def smeared(mats: dict[int, sparse.csr_matrix], coeffs) -> sparse.csr_matrix:
    """``sum_i coeffs[i] * mats[i]``."""
    out = None
    for i, c in coeffs:
        term = c * mats[i]
        out = term if out is None else out + term
    return out
