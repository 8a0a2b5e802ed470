"""Random test objects on a finite mode window ``{-K..-1, 1..K}``."""

from __future__ import annotations

import numpy as np

from seawedge.fock import FockState, FockVector
from seawedge.vectors import OneParticleVector
from seawedge.wedge import BasisLabel, WedgeVector


def cnormal(rng: np.random.Generator, size=None):
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def random_subset(rng: np.random.Generator, pool, p: float = 0.5) -> list:
    return [x for x in pool if rng.random() < p]


def random_label(rng: np.random.Generator, K: int) -> BasisLabel:
    return BasisLabel(random_subset(rng, range(1, K + 1)), random_subset(rng, range(-1, -K - 1, -1)))


def _scaled(rng: np.random.Generator, v):
    # norm uniform in [0.5, 1.5] keeps absolute tolerances meaningful
    return (rng.uniform(0.5, 1.5) / v.norm()) * v


def random_wedge(rng: np.random.Generator, K: int, nterms: int = 4) -> WedgeVector:
    return _scaled(rng, WedgeVector((random_label(rng, K), complex(cnormal(rng))) for _ in range(nterms)))


def random_state(rng: np.random.Generator, K: int) -> FockState:
    return FockState(random_subset(rng, range(1, K + 1)), random_subset(rng, range(1, K + 1)))


def random_fock(rng: np.random.Generator, K: int, nterms: int = 4) -> FockVector:
    return _scaled(rng, FockVector((random_state(rng, K), complex(cnormal(rng))) for _ in range(nterms)))


def _random_modes(rng: np.random.Generator, modes: list[int], density: float) -> OneParticleVector:
    chosen = random_subset(rng, modes, density)
    if not chosen:
        chosen = [modes[int(rng.integers(len(modes)))]]
    return _scaled(rng, OneParticleVector({i: complex(cnormal(rng)) for i in chosen}))


def random_positive(rng: np.random.Generator, K: int, density: float = 0.6) -> OneParticleVector:
    return _random_modes(rng, list(range(1, K + 1)), density)


def random_negative(rng: np.random.Generator, K: int, density: float = 0.6) -> OneParticleVector:
    return _random_modes(rng, list(range(-1, -K - 1, -1)), density)


def random_one_particle(rng: np.random.Generator, K: int, density: float = 0.6) -> OneParticleVector:
    return _random_modes(rng, [i for i in range(-K, K + 1) if i], density)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary (QR with phase fix)."""
    q, r = np.linalg.qr(cnormal(rng, (n, n)) / np.sqrt(2))
    d = np.diag(r)
    return q * (d / np.abs(d))


def subseeds(seed: int, n: int) -> list[np.random.SeedSequence]:
    """Per-trial seed sequences, independent of evaluation order."""
    return np.random.SeedSequence(seed & 0xFFFF_FFFF_FFFF_FFFF).spawn(n)
