"""Finite-support complex vectors keyed by hashable basis labels."""

from __future__ import annotations

import math
from collections.abc import Hashable, Iterable, Iterator, Mapping
from typing import Generic, TypeVar

PRUNE_TOL = 1e-15

K = TypeVar("K", bound=Hashable)
V = TypeVar("V", bound="SparseVector")


def pruned(terms: Mapping, tol: float = PRUNE_TOL) -> dict:
    return {k: complex(c) for k, c in terms.items() if abs(c) > tol}


class SparseVector(Generic[K]):
    """Immutable sparse vector over an orthonormal basis.

    Subclasses only fix the key type; the arithmetic is shared. Amplitudes
    with modulus at or below ``PRUNE_TOL`` are dropped on construction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, complex] | Iterable[tuple[K, complex]] = ()):
        if not isinstance(terms, Mapping):
            acc: dict = {}
            for k, c in terms:
                acc[k] = acc.get(k, 0j) + c
            terms = acc
        self._terms = pruned(terms)

    @classmethod
    def _raw(cls: type[V], terms: dict) -> V:
        # terms already pruned and key-checked
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls: type[V]) -> V:
        return cls._raw({})

    @classmethod
    def basis(cls: type[V], key: K, amplitude: complex = 1.0) -> V:
        return cls({key: amplitude})

    @property
    def terms(self) -> Mapping[K, complex]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[K, complex]]:
        return iter(self._terms.items())

    def keys(self):
        return self._terms.keys()

    def amplitude(self, key: K) -> complex:
        return self._terms.get(key, 0j)

    def __getitem__(self, key: K) -> complex:
        return self.amplitude(key)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[K]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {c:.6g}" for k, c in self.sorted_items())
        return f"{type(self).__name__}({{{body}}})"

    def sorted_items(self) -> list[tuple[K, complex]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def __add__(self: V, other: V) -> V:
        if type(other) is not type(self):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0j) + c
        return self._raw(pruned(acc))

    def __sub__(self: V, other: V) -> V:
        if type(other) is not type(self):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self: V) -> V:
        return self._raw({k: -c for k, c in self._terms.items()})

    def __mul__(self: V, scalar: complex) -> V:
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return self._raw(pruned({k: scalar * c for k, c in self._terms.items()}))

    __rmul__ = __mul__

    def inner(self, other: SparseVector[K]) -> complex:
        """Inner product, anti-linear in ``self``."""
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        total = 0j
        for k in small._terms:
            if k in big._terms:
                total += self._terms[k].conjugate() * other._terms[k]
        return total

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self._terms.values()))

    def distance(self, other: SparseVector[K]) -> float:
        return (self - other).norm()


def accumulate(acc: dict, key, value: complex) -> None:
    acc[key] = acc.get(key, 0j) + value
