"""The unitary from the Dirac sea realization onto two-factor Fock space.

Every basis wedge is, up to a sign, a product of particle creations and
hole creations applied to the sea. ``map_U`` sends it to the same product of
``a*`` and ``b*`` applied to the Fock vacuum. The sign is never written in
closed form: ``canonicalize`` obtains it by replaying the product through
the wedge operators.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from seawedge import fock, sampling, wedge
from seawedge.dirac import ModeBasis, build_mode_basis, default_grid
from seawedge.fock import FockVector
from seawedge.vectors import OneParticleVector, mode
from seawedge.wedge import BasisLabel, WedgeVector


@dataclass(frozen=True)
class CanonicalForm:
    """``sign * psi*(e_p1)...psi*(e_pn) psi(e_v1)...psi(e_vm) Omega_D == e_label``."""

    sign: int
    particles: tuple[int, ...]
    holes: tuple[int, ...]

    def replay(self) -> WedgeVector:
        v = WedgeVector.vacuum()
        for j in reversed(self.holes):
            v = wedge.psi(mode(j), v)
        for p in reversed(self.particles):
            v = wedge.psi_star(mode(p), v)
        return self.sign * v


@lru_cache(maxsize=1 << 16)
def canonicalize(label: BasisLabel) -> CanonicalForm:
    particles = tuple(sorted(label.particles, reverse=True))
    holes = tuple(sorted(label.holes, reverse=True))
    replayed = CanonicalForm(1, particles, holes).replay()
    if len(replayed) != 1 or label not in replayed.keys():
        raise AssertionError(f"replay of {label!r} left the label basis: {replayed!r}")
    amp = replayed.amplitude(label)
    if amp not in (1, -1):
        raise AssertionError(f"replay of {label!r} gave amplitude {amp}")
    return CanonicalForm(int(amp.real), particles, holes)


@lru_cache(maxsize=1 << 16)
def _image_of_label(label: BasisLabel) -> tuple[fock.FockState, int]:
    cf = canonicalize(label)
    v = FockVector.vacuum()
    # b*(C e_v) with C e_v = e_{-v}
    for j in reversed(cf.holes):
        v = fock.b_star(mode(-j), v)
    for p in reversed(cf.particles):
        v = fock.a_star(mode(p), v)
    ((state, amp),) = v.items()
    return state, cf.sign * int(amp.real)


def map_U(v: WedgeVector) -> FockVector:
    acc: dict = {}
    for label, amp in v.items():
        state, sign = _image_of_label(label)
        acc[state] = acc.get(state, 0j) + sign * amp
    return FockVector(acc)


# Operator strings shared by both realizations: kind in {"a", "a*", "b", "b*"}.

SEA_OPS = {"a": wedge.a, "a*": wedge.a_star, "b": wedge.b, "b*": wedge.b_star}
FOCK_OPS = {"a": fock.a, "a*": fock.a_star, "b": fock.b, "b*": fock.b_star}


def apply_string(ops: list[tuple[str, OneParticleVector]], v, table):
    """Apply the written product ``ops[0] ops[1] ... ops[-1]`` to ``v`` (rightmost first)."""
    for kind, h in reversed(ops):
        v = table[kind](h, v)
    return v


def random_string(rng: np.random.Generator, K: int, max_len: int = 4) -> list[tuple[str, OneParticleVector]]:
    """Creators ``a*``/``b*`` with an occasional annihilator placed to their left."""
    n = int(rng.integers(1, max_len + 1))
    ops = [(str(k), sampling.random_positive(rng, K)) for k in rng.choice(["a*", "b*"], size=n)]
    if n > 1 and rng.random() < 0.5:
        at = int(rng.integers(0, n - 1))
        ops.insert(at, (str(rng.choice(["a", "b"])), sampling.random_positive(rng, K)))
    return ops


def random_states(rng: np.random.Generator, K: int, nterms: int = 2):
    """One random superposition of operator strings, realized on both sides."""
    sea, fk = WedgeVector.zero(), FockVector.zero()
    for _ in range(nterms):
        ops = random_string(rng, K)
        c = complex(sampling.cnormal(rng))
        sea = sea + c * apply_string(ops, WedgeVector.vacuum(), SEA_OPS)
        fk = fk + c * apply_string(ops, FockVector.vacuum(), FOCK_OPS)
    return sea, fk


@dataclass
class Report:
    trials: int
    window: int
    max_inner_dev: float
    max_field_dev: float
    max_map_dev: float
    min_energy: float
    seed: int
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        devs = (self.max_inner_dev, self.max_field_dev, self.max_map_dev)
        return all(math.isfinite(d) and d < self.tolerance for d in devs) and self.min_energy >= 0

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _trial(ss: np.random.SeedSequence, K: int, basis: ModeBasis, nstates: int) -> tuple[float, float, float, float]:
    rng = np.random.default_rng(ss)
    pairs = [random_states(rng, K) for _ in range(nstates)]
    sea = [p[0] for p in pairs]
    fk = [p[1] for p in pairs]

    inner_dev = 0.0
    for i in range(nstates):
        for j in range(nstates):
            inner_dev = max(inner_dev, abs(sea[i].inner(sea[j]) - fk[i].inner(fk[j])))
    map_dev = max((map_U(s).distance(f) for s, f in zip(sea, fk)), default=0.0)

    t = float(rng.uniform(-2.0, 2.0))
    f = sampling.random_one_particle(rng, K)
    field_dev = 0.0
    for j in range(nstates):
        sea_out = wedge.sea_field(t, f, sea[j], basis)
        fk_out = fock.fock_field(t, f, fk[j], basis)
        sea_out_star = wedge.sea_field_star(t, f, sea[j], basis)
        fk_out_star = fock.fock_field_star(t, f, fk[j], basis)
        field_dev = max(field_dev, map_U(sea_out).distance(fk_out), map_U(sea_out_star).distance(fk_out_star))
        for i in range(nstates):
            field_dev = max(
                field_dev,
                abs(sea[i].inner(sea_out) - fk[i].inner(fk_out)),
                abs(sea[i].inner(sea_out_star) - fk[i].inner(fk_out_star)),
            )
    min_energy = min(
        (fock.state_energy(s, basis) for v in fk for s in v.keys()), default=0.0
    )
    return inner_dev, field_dev, map_dev, float(min_energy)


def differential_suite(
    seed: int,
    trials: int,
    K: int,
    basis: ModeBasis | None = None,
    tolerance: float = 1e-10,
    workers: int = 1,
    nstates: int = 3,
) -> Report:
    """Run random operator strings through both realizations and compare.

    Each trial builds ``nstates`` states from random strings of ``a, a*, b, b*``
    over positive modes ``1..K``, then compares their Gram matrices, the
    images under ``map_U``, and matrix elements and ``map_U`` images of
    ``psi(t, f)`` and ``psi*(t, f)`` applied to them, for a random time and
    smearing vector.
    """
    if K < 1 or K > 8:
        raise ValueError("window K must be in 1..8")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    basis = basis or build_mode_basis(default_grid(K))
    seeds = sampling.subseeds(seed, trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda ss: _trial(ss, K, basis, nstates), seeds))
    else:
        results = [_trial(ss, K, basis, nstates) for ss in seeds]
    inner_dev = max((r[0] for r in results), default=0.0)
    field_dev = max((r[1] for r in results), default=0.0)
    map_dev = max((r[2] for r in results), default=0.0)
    min_energy = min((r[3] for r in results), default=0.0)
    return Report(trials, K, inner_dev, field_dev, map_dev, min_energy, seed, tolerance)
