"""One-particle vectors: finite coefficient maps over the mode basis.

A mode index ``i`` is a nonzero integer. ``i > 0`` labels a positive energy
mode, ``i < 0`` a negative energy mode, and charge conjugation pairs ``i``
with ``-i``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping

import numpy as np

from seawedge._sparse import SparseVector


def _check_mode(i) -> int:
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise TypeError(f"mode index must be an int, got {i!r}")
    i = int(i)
    if i == 0:
        raise ValueError("mode index 0 does not exist")
    return i


class OneParticleVector(SparseVector[int]):
    """``f = sum_i (e_i, f) e_i`` with finitely many nonzero coefficients."""

    __slots__ = ()

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        super().__init__((_check_mode(i), c) for i, c in items)

    @property
    def coeffs(self) -> Mapping[int, complex]:
        return self.terms

    @classmethod
    def from_array(cls, modes: Iterable[int], values: Iterable[complex]) -> OneParticleVector:
        return cls(zip(modes, values))

    def to_array(self, modes: Iterable[int]) -> np.ndarray:
        return np.array([self.amplitude(i) for i in modes], dtype=complex)

    def positive_part(self) -> OneParticleVector:
        return self._raw({i: c for i, c in self.items() if i > 0})

    def negative_part(self) -> OneParticleVector:
        return self._raw({i: c for i, c in self.items() if i < 0})

    def is_positive(self) -> bool:
        return all(i > 0 for i in self.keys())

    def is_negative(self) -> bool:
        return all(i < 0 for i in self.keys())

    def conjugate(self) -> OneParticleVector:
        """Charge conjugation in the paired mode basis: ``C e_i = e_{-i}``, anti-linear."""
        return self._raw({-i: c.conjugate() for i, c in self.items()})

    def map_modes(self, phase: Callable[[int], complex]) -> OneParticleVector:
        """Multiply coefficient ``i`` by ``phase(i)``."""
        return OneParticleVector({i: phase(i) * c for i, c in self.items()})

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.keys()))


def mode(i: int, amplitude: complex = 1.0) -> OneParticleVector:
    """The basis vector ``amplitude * e_i``."""
    return OneParticleVector({i: amplitude})


def truncate(coefficient: Callable[[int], complex], n: int, norm_sq: float) -> tuple[OneParticleVector, float]:
    """Finite approximant ``f_N = sum_{|i| <= n} (e_i, f) e_i`` and ``||f - f_N||``.

    ``norm_sq`` is the full ``||f||^2``. Since ``psi(f) - psi(f_N) = psi(f - f_N)``
    and ``||psi(g)|| <= ||g||``, the returned tail norm bounds the operator-norm
    error of using ``f_N`` in place of ``f``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    f_n = OneParticleVector((i, coefficient(i)) for i in range(-n, n + 1) if i != 0)
    tail_sq = norm_sq - f_n.norm() ** 2
    if tail_sq < -1e-12 * max(norm_sq, 1.0):
        raise ValueError("norm_sq is smaller than the norm of the truncation")
    return f_n, math.sqrt(max(tail_sq, 0.0))
