"""Free Dirac theory on a finite momentum lattice.

In momentum space the Dirac Hamiltonian acts on each momentum separately as
the 4x4 matrix ``H(p) = alpha . p + beta m``. Its eigenvalues are ``+omega(p)``
and ``-omega(p)``, each twice degenerate, with ``omega(p) = sqrt(|p|^2 + m^2)``.

Charge conjugation is anti-linear and maps momentum ``p`` to ``-p``:
``(C f)(p) = M conj(f(-p))`` with ``M = i beta alpha^2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from seawedge.vectors import OneParticleVector

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class DiracMatrices:
    alpha1: np.ndarray
    alpha2: np.ndarray
    alpha3: np.ndarray
    beta: np.ndarray

    @property
    def alphas(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.alpha1, self.alpha2, self.alpha3

    def clifford_defect(self) -> float:
        """Largest entry of ``{a^i, a^j} - 2 delta^ij``, ``{a^k, beta}``, ``beta^2 - 1``."""
        eye = np.eye(4)
        dev = np.abs(self.beta @ self.beta - eye).max()
        for i, ai in enumerate(self.alphas):
            dev = max(dev, np.abs(ai @ self.beta + self.beta @ ai).max())
            dev = max(dev, np.abs(ai - ai.conj().T).max())
            for j, aj in enumerate(self.alphas):
                dev = max(dev, np.abs(ai @ aj + aj @ ai - 2 * (i == j) * eye).max())
        return float(max(dev, np.abs(self.beta - self.beta.conj().T).max()))


def dirac_representation() -> DiracMatrices:
    zero = np.zeros((2, 2), dtype=complex)
    eye = np.eye(2, dtype=complex)
    alphas = [np.block([[zero, s], [s, zero]]) for s in SIGMA]
    beta = np.block([[eye, zero], [zero, -eye]])
    return DiracMatrices(*alphas, beta)


DIRAC = dirac_representation()
CONJUGATION_MATRIX = 1j * DIRAC.beta @ DIRAC.alpha2


class DegenerateModeError(ValueError):
    """``omega = 0`` (massless, zero momentum): the energy projections are undefined."""


def _as_momentum(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise ValueError(f"momentum must be a 3-vector, got shape {p.shape}")
    return p


def hamiltonian_matrix(p, m: float, gamma: DiracMatrices = DIRAC) -> np.ndarray:
    p = _as_momentum(p)
    return sum(pk * ak for pk, ak in zip(p, gamma.alphas)) + m * gamma.beta


def omega(p, m: float) -> float:
    p = _as_momentum(p)
    return math.sqrt(float(p @ p) + m * m)


def projection(p, m: float, sign: int, gamma: DiracMatrices = DIRAC) -> np.ndarray:
    """``P^{+-} = (omega +- H) / (2 omega)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    w = omega(p, m)
    if w == 0.0:
        raise DegenerateModeError("omega(p) = 0; use m > 0 or p != 0")
    return (w * np.eye(4) + sign * hamiltonian_matrix(p, m, gamma)) / (2 * w)


def conjugate_spinor(u) -> np.ndarray:
    """Spinor part of charge conjugation, ``M conj(u)``; the momentum flips separately."""
    return CONJUGATION_MATRIX @ np.conj(np.asarray(u, dtype=complex))


@dataclass(frozen=True)
class MomentumGrid:
    mass: float
    momenta: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        moms = tuple(tuple(float(x) for x in _as_momentum(p)) for p in self.momenta)
        object.__setattr__(self, "momenta", moms)
        object.__setattr__(self, "mass", float(self.mass))
        if self.mass < 0:
            raise ValueError("mass must be >= 0")
        if len(set(moms)) != len(moms):
            raise ValueError("duplicate momenta in grid")
        have = set(moms)
        for p in moms:
            if tuple(-x + 0.0 for x in p) not in have:
                raise ValueError(f"grid is not closed under p -> -p: missing {tuple(-x for x in p)}")
        for p in moms:
            if omega(p, self.mass) == 0.0:
                raise DegenerateModeError("massless grid contains p = 0")

    def index_of(self, p) -> int:
        key = tuple(float(x) + 0.0 for x in p)
        return self.momenta.index(key)

    def partner(self, n: int) -> int:
        """Index of ``-p_n``."""
        return self.index_of(tuple(-x for x in self.momenta[n]))

    @classmethod
    def cube(cls, mass: float, half_width: int = 1, spacing: float = 1.0) -> MomentumGrid:
        r = range(-half_width, half_width + 1)
        return cls(mass, tuple((spacing * i, spacing * j, spacing * k) for i in r for j in r for k in r))

    @classmethod
    def from_json(cls, data: dict) -> MomentumGrid:
        return cls(data["mass"], tuple(tuple(p) for p in data["momenta"]))

    @classmethod
    def load(cls, path: str | Path) -> MomentumGrid:
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return {"mass": self.mass, "momenta": [list(p) for p in self.momenta]}


# Field-level operations: a field is an array of shape (len(grid.momenta), 4).


def conjugate_field(f: np.ndarray, grid: MomentumGrid) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    out = np.empty_like(f)
    for n in range(len(grid.momenta)):
        out[n] = conjugate_spinor(f[grid.partner(n)])
    return out


def project_field(f: np.ndarray, grid: MomentumGrid, sign: int) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    return np.stack([projection(p, grid.mass, sign) @ f[n] for n, p in enumerate(grid.momenta)])


def hamiltonian_field(f: np.ndarray, grid: MomentumGrid) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    return np.stack([hamiltonian_matrix(p, grid.mass) @ f[n] for n, p in enumerate(grid.momenta)])


def field_inner(f: np.ndarray, g: np.ndarray) -> complex:
    return complex(np.vdot(f, g))


def charge_conjugation(v, grid: MomentumGrid | None = None):
    """Anti-linear charge conjugation.

    Accepts a ``OneParticleVector`` (paired-index action), a field of shape
    ``(npts, 4)`` (needs ``grid``), or a bare 4-spinor (spinor part only).
    """
    if isinstance(v, OneParticleVector):
        return v.conjugate()
    arr = np.asarray(v)
    if arr.shape == (4,):
        return conjugate_spinor(arr)
    if grid is None:
        raise ValueError("conjugating a lattice field needs its grid")
    return conjugate_field(arr, grid)


@dataclass(frozen=True)
class Mode:
    momentum: tuple[float, float, float]
    spinor: np.ndarray = field(repr=False)
    energy: float


_REFERENCE_SPINORS = np.eye(4, dtype=complex)


def _positive_spinors(p, m: float, tol: float = 1e-8) -> list[np.ndarray]:
    # project fixed reference spinors, Gram-Schmidt in fixed order
    proj = projection(p, m, +1)
    found: list[np.ndarray] = []
    for ref in _REFERENCE_SPINORS:
        u = proj @ ref
        for w in found:
            u = u - np.vdot(w, u) * w
        nrm = np.linalg.norm(u)
        if nrm > tol:
            found.append(u / nrm)
        if len(found) == 2:
            break
    if len(found) != 2:
        raise np.linalg.LinAlgError(f"could not resolve the positive energy eigenspace at p={tuple(p)}")
    # first nonzero component real positive
    out = []
    for u in found:
        k = int(np.argmax(np.abs(u) > 1e-12))
        out.append(u * (abs(u[k]) / u[k]))
    return out


class ModeBasis:
    """Orthonormal mode basis ``{e_i}`` compatible with the energy splitting.

    Positive indices enumerate two positive energy spinors per grid momentum,
    in grid order. The negative partner is fixed as ``e_{-i} = C e_i``.
    """

    def __init__(self, grid: MomentumGrid, modes: dict[int, Mode]):
        self.grid = grid
        self.modes = dict(modes)

    @property
    def mass(self) -> float:
        return self.grid.mass

    def __contains__(self, i: int) -> bool:
        return i in self.modes

    def __len__(self) -> int:
        return len(self.modes)

    def mode(self, i: int) -> Mode:
        try:
            return self.modes[i]
        except KeyError:
            raise KeyError(f"unknown mode index {i}") from None

    def omega(self, i: int) -> float:
        return abs(self.mode(i).energy)

    def energy(self, i: int) -> float:
        """Signed eigenvalue of ``H`` on ``e_i``."""
        return self.mode(i).energy

    @property
    def positive_indices(self) -> list[int]:
        return sorted(i for i in self.modes if i > 0)

    def to_field(self, f: OneParticleVector) -> np.ndarray:
        out = np.zeros((len(self.grid.momenta), 4), dtype=complex)
        for i, c in f.items():
            md = self.mode(i)
            out[self.grid.index_of(md.momentum)] += c * md.spinor
        return out

    def from_field(self, f: np.ndarray) -> OneParticleVector:
        f = np.asarray(f, dtype=complex)
        coeffs = {}
        for i, md in self.modes.items():
            coeffs[i] = np.vdot(md.spinor, f[self.grid.index_of(md.momentum)])
        return OneParticleVector(coeffs)

    def table(self) -> list[dict]:
        rows = []
        for i in sorted(self.modes, key=lambda i: (abs(i), -i)):
            md = self.modes[i]
            rows.append({
                "index": i,
                "momentum": list(md.momentum),
                "energy": md.energy,
                "spinor": [[float(z.real), float(z.imag)] for z in md.spinor],
            })
        return rows


def build_mode_basis(grid: MomentumGrid) -> ModeBasis:
    modes: dict[int, Mode] = {}
    i = 0
    for n, p in enumerate(grid.momenta):
        w = omega(p, grid.mass)
        minus_p = grid.momenta[grid.partner(n)]
        for u in _positive_spinors(p, grid.mass):
            i += 1
            modes[i] = Mode(p, u, w)
            modes[-i] = Mode(minus_p, conjugate_spinor(u), -w)
    return ModeBasis(grid, modes)


def _check_support(f: OneParticleVector, basis: ModeBasis) -> None:
    for i in f.keys():
        if i not in basis:
            raise KeyError(f"unknown mode index {i}")


def apply_hamiltonian(f: OneParticleVector, basis: ModeBasis) -> OneParticleVector:
    """``H f``: coefficient ``i`` times ``+omega`` (``i > 0``) or ``-omega`` (``i < 0``)."""
    _check_support(f, basis)
    return f.map_modes(basis.energy)


def evolve(f: OneParticleVector, t: float, basis: ModeBasis) -> OneParticleVector:
    """``e^{iHt} f``."""
    _check_support(f, basis)
    return f.map_modes(lambda i: np.exp(1j * basis.energy(i) * t))


def spectrum(grid: MomentumGrid) -> list[dict]:
    rows = []
    for p in grid.momenta:
        ev = np.linalg.eigvalsh(hamiltonian_matrix(p, grid.mass))
        rows.append({"momentum": list(p), "omega": omega(p, grid.mass), "eigenvalues": sorted(ev.tolist(), reverse=True)})
    return rows


def default_grid(npos_modes: int, mass: float = 1.0) -> MomentumGrid:
    """Small negation-closed grid with at least ``npos_modes`` positive modes.

    Momenta are taken in the order ``0, +x, -x, +y, -y, +z, -z, +2x, ...``.
    """
    moms: list[tuple[float, float, float]] = [(0.0, 0.0, 0.0)]
    scale = 1
    while 2 * len(moms) < npos_modes:
        for axis in range(3):
            e = [0.0, 0.0, 0.0]
            e[axis] = 0.5 * scale
            moms.append(tuple(e))
            moms.append(tuple(-x + 0.0 for x in e))
        scale += 1
    return MomentumGrid(mass, tuple(moms))


def random_spinors(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=(n, 4)) + 1j * rng.normal(size=(n, 4))
