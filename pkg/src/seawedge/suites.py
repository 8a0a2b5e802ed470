"""Property suites behind the ``verify-*`` commands.

Each check returns a maximum deviation; callers compare it to a tolerance.
Single-mode algebra on basis labels is exact, so those checks report
integer-valued deviations.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

import numpy as np
from scipy import sparse

from seawedge import sampling, wedge
from seawedge.dense import WedgeWindow
from seawedge.vectors import OneParticleVector, mode
from seawedge.wedge import BasisLabel, WedgeVector


def window_modes(K: int) -> list[int]:
    return [i for i in range(-K, K + 1) if i]


def _chain(op1, i, op2, j, label: BasisLabel, acc: dict) -> None:
    # acc += op1(i) op2(j) e_label, integer signs only
    first = op2(j, label)
    if first is None:
        return
    second = op1(i, first[1])
    if second is None:
        return
    out = second[1]
    acc[out] = acc.get(out, 0) + first[0] * second[0]


def _anticommutator_defect(op1, i, op2, j, label: BasisLabel, delta: int) -> int:
    acc: dict = {}
    _chain(op1, i, op2, j, label, acc)
    _chain(op2, j, op1, i, label, acc)
    acc[label] = acc.get(label, 0) - delta
    return max((abs(c) for c in acc.values()), default=0)


def mode_car_deviation(labels: Iterable[BasisLabel], modes: Sequence[int] | None = None) -> int:
    """Max integer deviation of the three single-mode anticommutators on basis labels.

    With ``modes=None`` each label is tested against ``label_modes(label)``.
    """
    dev = 0
    inte, ext = wedge.interior, wedge.exterior
    for label in labels:
        ms = modes if modes is not None else label_modes(label)
        for i, j in itertools.product(ms, repeat=2):
            dev = max(
                dev,
                _anticommutator_defect(inte, i, ext, j, label, int(i == j)),
                _anticommutator_defect(inte, i, inte, j, label, 0),
                _anticommutator_defect(ext, i, ext, j, label, 0),
            )
    return dev


def label_modes(label: BasisLabel, limit: int | None = 8) -> list[int]:
    """Indices where the label's algebra is nontrivial, thinned to ``limit`` evenly spread ones."""
    top = max(label.particles, default=0) + 1
    bottom = min(label.holes, default=0) - 1
    ms = sorted(set(label.particles) | set(label.holes) | {top, bottom, 1, -1})
    if limit is not None and len(ms) > limit:
        picks = np.linspace(0, len(ms) - 1, limit).round().astype(int)
        ms = [ms[k] for k in sorted(set(picks.tolist()))]
    return ms


def random_deep_label(rng: np.random.Generator, K: int) -> BasisLabel:
    """Label with indices up to ``3K`` in either direction."""
    return sampling.random_label(rng, 3 * K)


def charge_deviation(labels: Iterable[BasisLabel], modes: Sequence[int]) -> int:
    """Count of (label, mode) pairs where ``psi*`` / ``psi`` fail to shift charge by +1 / -1."""
    bad = 0
    for label in labels:
        for j in modes:
            hit = wedge.exterior(j, label)
            if hit is not None and hit[1].charge != label.charge + 1:
                bad += 1
            hit = wedge.interior(j, label)
            if hit is not None and hit[1].charge != label.charge - 1:
                bad += 1
    return bad


def wedge_operator_matrix(window: WedgeWindow, apply) -> sparse.csr_matrix:
    """Matrix of a label-basis operator on the window, column by column."""
    rows, cols, vals = [], [], []
    for n, label in enumerate(window.all_labels()):
        for out, c in apply(WedgeVector.basis(label)).items():
            rows.append(window.label_to_index(out))
            cols.append(n)
            vals.append(c)
    return sparse.csr_matrix((vals, (rows, cols)), shape=(window.dim, window.dim), dtype=complex)


def dense_oracle_deviation(K: int) -> float:
    """Compare ``interior``/``exterior`` with Jordan-Wigner matrices on every window state."""
    window = WedgeWindow(K)
    dev = 0.0
    for j in window_modes(K):
        a = wedge_operator_matrix(window, lambda v: wedge.psi(mode(j), v))
        c = wedge_operator_matrix(window, lambda v: wedge.psi_star(mode(j), v))
        for got, want in ((a, window.psi_matrix(j)), (c, window.psi_star_matrix(j))):
            diff = got - want
            dev = max(dev, float(abs(diff).max()) if diff.nnz else 0.0)
    return dev


def dense_car_deviation(K: int) -> float:
    """CAR evaluated directly on the dense oracle matrices."""
    window = WedgeWindow(K)
    eye = sparse.identity(window.dim, format="csr", dtype=complex)
    dev = 0.0
    for i, j in itertools.product(window_modes(K), repeat=2):
        ai, aj = window.psi_matrix(i), window.psi_matrix(j)
        cj = window.psi_star_matrix(j)
        for m in (ai @ cj + cj @ ai - (i == j) * eye, ai @ aj + aj @ ai):
            m = m.tocsr()
            m.eliminate_zeros()
            dev = max(dev, float(abs(m).max()) if m.nnz else 0.0)
    return dev


def smeared_deviation(rng: np.random.Generator, trials: int, K: int) -> dict[str, float]:
    """Smeared CAR, norm identity, adjointness and boundedness on random data."""
    out = {"smeared_car": 0.0, "norm_identity": 0.0, "adjointness": 0.0, "boundedness": 0.0}
    for _ in range(trials):
        f1 = sampling.random_one_particle(rng, K)
        f2 = sampling.random_one_particle(rng, K)
        v = sampling.random_wedge(rng, K)
        w = sampling.random_wedge(rng, K)
        car = wedge.psi(f1, wedge.psi_star(f2, v)) + wedge.psi_star(f2, wedge.psi(f1, v))
        out["smeared_car"] = max(out["smeared_car"], car.distance(f1.inner(f2) * v))
        for g in (wedge.psi(f1, wedge.psi(f2, v)) + wedge.psi(f2, wedge.psi(f1, v)),
                  wedge.psi_star(f1, wedge.psi_star(f2, v)) + wedge.psi_star(f2, wedge.psi_star(f1, v))):
            out["smeared_car"] = max(out["smeared_car"], g.norm())
        lhs = wedge.psi_star(f1, v).norm() ** 2 + wedge.psi(f1, v).norm() ** 2
        out["norm_identity"] = max(out["norm_identity"], abs(lhs - f1.norm() ** 2 * v.norm() ** 2))
        adj = wedge.psi_star(f1, v).inner(w) - v.inner(wedge.psi(f1, w))
        out["adjointness"] = max(out["adjointness"], abs(adj))
        excess = wedge.psi(f1, v).norm() - f1.norm() * v.norm()
        out["boundedness"] = max(out["boundedness"], excess, 0.0)
    return out


def vacuum_deviation(rng: np.random.Generator, trials: int, K: int) -> float:
    vac = WedgeVector.vacuum()
    dev = 0.0
    for _ in range(trials):
        dev = max(dev, wedge.psi(sampling.random_positive(rng, K), vac).norm())
        dev = max(dev, wedge.psi_star(sampling.random_negative(rng, K), vac).norm())
    return dev


def random_family(rng: np.random.Generator, K: int, nmax: int, sign: int) -> list[OneParticleVector]:
    n = int(rng.integers(0, nmax + 1))
    draw = sampling.random_positive if sign > 0 else sampling.random_negative
    return [draw(rng, K) for _ in range(n)]


def determinant_law_deviation(rng: np.random.Generator, trials: int, K: int, nmax: int = 4) -> dict[str, float]:
    """Generated-vector overlaps against the product of Gram determinants."""
    law = perm = 0.0
    for _ in range(trials):
        hs1 = random_family(rng, K, nmax, +1)
        gs1 = random_family(rng, K, nmax, -1)
        # bias toward matching sizes so most overlaps are nonzero
        if rng.random() < 0.75:
            hs2 = [sampling.random_positive(rng, K) for _ in hs1]
            gs2 = [sampling.random_negative(rng, K) for _ in gs1]
        else:
            hs2 = random_family(rng, K, nmax, +1)
            gs2 = random_family(rng, K, nmax, -1)
        got = wedge.generated_vector(hs1, gs1).inner(wedge.generated_vector(hs2, gs2))
        law = max(law, abs(got - wedge.generated_inner(hs1, gs1, hs2, gs2)))
        for rows, cols in ((hs1, hs2), (gs1, gs2), (gs2, gs1)):
            perm = max(perm, abs(wedge.gram_det(rows, cols) - wedge.gram_det_permutation_sum(rows, cols)))
    return {"determinant_law": law, "permutation_sum": perm}


def rotate(f: OneParticleVector, u_pos: np.ndarray, u_neg: np.ndarray, K: int) -> OneParticleVector:
    """Coefficients of ``f`` in the rotated basis ``e'_i = sum_k U[k, i] e_k``."""
    pos = list(range(1, K + 1))
    neg = list(range(-1, -K - 1, -1))
    out = OneParticleVector.from_array(pos, u_pos.conj().T @ f.to_array(pos))
    return out + OneParticleVector.from_array(neg, u_neg.conj().T @ f.to_array(neg))


def basis_independence_deviation(
    rng: np.random.Generator, trials: int, K: int, nvectors: int = 4, nmax: int = 3
) -> float:
    """Gram matrices of generated vectors before and after a splitting-preserving rotation."""
    dev = 0.0
    for _ in range(trials):
        u_pos = sampling.random_unitary(rng, K)
        u_neg = sampling.random_unitary(rng, K)
        fams = [(random_family(rng, K, nmax, +1), random_family(rng, K, nmax, -1)) for _ in range(nvectors)]
        orig = [wedge.generated_vector(hs, gs) for hs, gs in fams]
        rot = [
            wedge.generated_vector([rotate(h, u_pos, u_neg, K) for h in hs], [rotate(g, u_pos, u_neg, K) for g in gs])
            for hs, gs in fams
        ]
        for (i, (hs_i, gs_i)), (j, (hs_j, gs_j)) in itertools.product(enumerate(fams), repeat=2):
            closed = wedge.generated_inner(hs_i, gs_i, hs_j, gs_j)
            dev = max(dev, abs(rot[i].inner(rot[j]) - closed), abs(orig[i].inner(orig[j]) - closed))
    return dev


def verify_car(seed: int, trials: int, K: int) -> dict[str, float]:
    rng = np.random.default_rng(sampling.subseeds(seed, 1)[0])
    modes = window_modes(K)
    labels = WedgeWindow(K).all_labels()
    deep = [random_deep_label(rng, K) for _ in range(trials)]
    deep_modes = window_modes(3 * K)
    checks = {
        "mode_car_window": float(mode_car_deviation(labels, modes)),
        "mode_car_random_labels": float(mode_car_deviation(deep)),
        "charge_shift": float(charge_deviation(deep, deep_modes)),
        "dense_oracle": dense_oracle_deviation(K),
        "dense_car": dense_car_deviation(K),
        "vacuum": vacuum_deviation(rng, trials, K),
    }
    checks.update(smeared_deviation(rng, trials, K))
    checks.update(determinant_law_deviation(rng, trials, K))
    return checks


def verify_basis_independence(seed: int, trials: int, K: int) -> dict[str, float]:
    rng = np.random.default_rng(sampling.subseeds(seed, 1)[0])
    return {"basis_independence": basis_independence_deviation(rng, trials, K)}
