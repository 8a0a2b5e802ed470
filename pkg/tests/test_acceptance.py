"""Acceptance criteria, each at its stated sample size and tolerance."""

import time

import numpy as np
import pytest

from seawedge import dirac, fock, suites, wedge
from seawedge.dense import WedgeWindow
from seawedge.dirac import DIRAC, MomentumGrid, build_mode_basis, default_grid, hamiltonian_matrix, projection
from seawedge.equivalence import FOCK_OPS, SEA_OPS, differential_suite, map_U, random_states
from seawedge.fock import FockVector
from seawedge.sampling import cnormal, random_fock, random_one_particle, random_positive, random_wedge
from seawedge.wedge import WedgeVector

SEED = 20240601


def rng_for(n: int) -> np.random.Generator:
    return np.random.default_rng([SEED, n])


@pytest.mark.criterion(1, "CAR exactness on K=5 window and 10^4 random labels")
def test_car_exactness(record_property):
    start = time.perf_counter()
    window_dev = suites.mode_car_deviation(WedgeWindow(5).all_labels(), suites.window_modes(5))
    rng = rng_for(1)
    labels = [suites.random_deep_label(rng, 5) for _ in range(10_000)]
    random_dev = suites.mode_car_deviation(labels)
    elapsed = time.perf_counter() - start
    record_property("window_dev", window_dev)
    record_property("random_dev", random_dev)
    record_property("seconds", round(elapsed, 1))
    assert window_dev == 0 and random_dev == 0
    assert elapsed < 60


@pytest.mark.criterion(2, "smeared CAR and norm identity")
def test_smeared_car_and_norm_identity(record_property):
    dev = suites.smeared_deviation(rng_for(2), 500, 5)
    record_property("smeared_car", f"{dev['smeared_car']:.1e}")
    record_property("norm_identity", f"{dev['norm_identity']:.1e}")
    assert dev["smeared_car"] < 1e-12
    assert dev["norm_identity"] < 1e-12


@pytest.mark.criterion(3, "boundedness of psi(f)")
def test_boundedness(record_property):
    rng = rng_for(3)
    excess = 0.0
    for _ in range(500):
        f, v = random_one_particle(rng, 5), random_wedge(rng, 5)
        excess = max(excess, wedge.psi(f, v).norm() - f.norm() * v.norm())
    record_property("max_excess", f"{excess:.1e}")
    assert excess <= 1e-12


@pytest.mark.criterion(4, "vacuum annihilated by psi(h) and psi*(g)")
def test_vacuum_structure(record_property):
    dev = suites.vacuum_deviation(rng_for(4), 100, 5)
    record_property("max_norm", dev)
    assert dev == 0.0


@pytest.mark.criterion(5, "determinant inner-product law")
def test_determinant_law(record_property):
    dev = suites.determinant_law_deviation(rng_for(5), 200, 5, nmax=4)
    record_property("determinant_law", f"{dev['determinant_law']:.1e}")
    record_property("permutation_sum", f"{dev['permutation_sum']:.1e}")
    assert dev["determinant_law"] < 1e-10
    assert dev["permutation_sum"] < 1e-12


@pytest.mark.criterion(6, "basis independence under block rotations")
def test_basis_independence(record_property):
    dev = suites.basis_independence_deviation(rng_for(6), 50, 4)
    record_property("gram_dev", f"{dev:.1e}")
    assert dev < 1e-10


class TestDirac:
    pytestmark = pytest.mark.criterion(7, "Dirac single-particle suite")

    def test_clifford(self, record_property):
        record_property("clifford", f"{DIRAC.clifford_defect():.1e}")
        assert DIRAC.clifford_defect() < 1e-14

    def test_projections(self):
        rng = rng_for(7)
        eye = np.eye(4)
        for _ in range(100):
            p, m = rng.normal(size=3) * rng.uniform(0, 3), rng.uniform(0.1, 3)
            pp, pm = projection(p, m, +1), projection(p, m, -1)
            h, w = hamiltonian_matrix(p, m), dirac.omega(p, m)
            for q in (pp, pm):
                assert np.abs(q @ q - q).max() < 1e-12
            assert np.abs(pp + pm - eye).max() < 1e-12
            assert np.abs(h @ pp - w * pp).max() < 1e-12
            assert np.abs(h @ pm + w * pm).max() < 1e-12

    @pytest.mark.parametrize("spacing", [0.3, 1.0, 2.5])
    @pytest.mark.parametrize("mass", [0.0, 0.5, 1.0, 2.0])
    def test_spectral_gap(self, mass, spacing):
        momenta = MomentumGrid.cube(1.0, 1, spacing).momenta
        # p = 0 has no spinor splitting when massless
        grid = MomentumGrid(mass, tuple(p for p in momenta if mass > 0 or any(p)))
        assert len(grid.momenta) <= 27
        for p in grid.momenta:
            ev = np.linalg.eigvalsh(hamiltonian_matrix(p, mass))
            assert np.all(np.abs(ev) >= mass - 1e-12)
            assert np.sum(ev > 0) == 2

    def test_charge_conjugation(self):
        rng = rng_for(8)
        grid = MomentumGrid.cube(1.0, 1, 0.7)
        c = lambda f: dirac.charge_conjugation(f, grid)
        for u in cnormal(rng, (100, 4)):
            assert np.abs(dirac.charge_conjugation(dirac.charge_conjugation(u)) - u).max() < 1e-12
        for _ in range(100):
            f, g = cnormal(rng, (27, 4)), cnormal(rng, (27, 4))
            assert np.abs(c(c(f)) - f).max() < 1e-12
            assert abs(dirac.field_inner(c(f), c(g)) - dirac.field_inner(g, f)) < 1e-12
            for s in (+1, -1):
                lhs = c(dirac.project_field(f, grid, s))
                rhs = dirac.project_field(c(f), grid, -s)
                assert np.abs(lhs - rhs).max() < 1e-12


BASIS = build_mode_basis(default_grid(5))


def _fd_deviation(elem, f, hf, t0, step=1e-5) -> float:
    deriv = (elem(t0 + step, f) - elem(t0 - step, f)) / (2 * step)
    return abs(deriv - (-1j) * elem(t0, hf))


class TestFieldEquation:
    pytestmark = pytest.mark.criterion(8, "field equation on both representations")

    def test_sea_side(self, record_property):
        rng = rng_for(9)
        dev = scale = 0.0
        for _ in range(50):
            f, v = random_one_particle(rng, 5), random_wedge(rng, 5)
            t0 = rng.uniform(-2, 2)
            # bra overlapping both field outputs so the matrix elements are nonzero
            w = random_wedge(rng, 5) + wedge.sea_field(0.0, f, v, BASIS) + wedge.sea_field_star(0.0, f, v, BASIS)
            elem = lambda t, g: w.inner(wedge.sea_field(t, g, v, BASIS))
            scale = max(scale, abs(elem(t0, f)))
            dev = max(dev, _fd_deviation(elem, f, dirac.apply_hamiltonian(f, BASIS), t0))
            elem = lambda t, g: w.inner(wedge.sea_field_star(t, g, v, BASIS))
            hf = dirac.apply_hamiltonian(f, BASIS)
            deriv = (elem(t0 + 1e-5, f) - elem(t0 - 1e-5, f)) / 2e-5
            dev = max(dev, abs(deriv - 1j * elem(t0, hf)))
        record_property("sea_dev", f"{dev:.1e}")
        assert scale > 0.1
        assert dev < 1e-6

    def test_fock_side(self, record_property):
        rng = rng_for(10)
        dev = scale = 0.0
        for _ in range(50):
            f, v = random_one_particle(rng, 5), random_fock(rng, 5)
            t0 = rng.uniform(-2, 2)
            w = random_fock(rng, 5) + fock.fock_field(0.0, f, v, BASIS)
            elem = lambda t, g: w.inner(fock.fock_field(t, g, v, BASIS))
            scale = max(scale, abs(elem(t0, f)))
            dev = max(dev, _fd_deviation(elem, f, dirac.apply_hamiltonian(f, BASIS), t0))
        record_property("fock_dev", f"{dev:.1e}")
        assert scale > 0.1
        assert dev < 1e-6


class TestEquivalence:
    pytestmark = pytest.mark.criterion(9, "equivalence of sea and two-factor Fock representations")

    def test_differential_suite(self, record_property):
        report = differential_suite(SEED, 300, 4)
        record_property("max_inner_dev", f"{report.max_inner_dev:.1e}")
        record_property("max_field_dev", f"{report.max_field_dev:.1e}")
        assert report.max_inner_dev < 1e-10
        assert report.max_field_dev < 1e-10
        assert report.passed

    def test_vacuum_maps_to_vacuum(self):
        assert map_U(WedgeVector.vacuum()) == FockVector.vacuum()

    @pytest.mark.parametrize("kind", ["a", "a*", "b", "b*"])
    def test_intertwining(self, kind):
        rng = rng_for(11)
        for _ in range(100):
            h, v = random_positive(rng, 4), random_wedge(rng, 4)
            assert map_U(SEA_OPS[kind](h, v)).distance(FOCK_OPS[kind](h, map_U(v))) < 1e-12


class TestPositiveEnergy:
    pytestmark = pytest.mark.criterion(10, "positive energy and implementable evolution")

    def test_reachable_states_nonnegative(self, record_property):
        basis = build_mode_basis(default_grid(4))
        rng = rng_for(12)
        reached = set()
        for label in WedgeWindow(4).all_labels():
            reached |= set(map_U(WedgeVector.basis(label)).keys())
        for _ in range(300):
            reached |= set(random_states(rng, 4)[1].keys())
        energies = [fock.state_energy(s, basis) for s in reached]
        record_property("states", len(reached))
        record_property("min_energy", min(energies))
        assert min(energies) >= 0
        assert differential_suite(SEED, 50, 4).min_energy >= 0

    def test_evolution_transported(self, record_property):
        basis = build_mode_basis(default_grid(4))
        rng = rng_for(13)
        dev = 0.0
        for _ in range(100):
            hs = suites.random_family(rng, 4, 3, +1)
            gs = suites.random_family(rng, 4, 3, -1)
            t = rng.uniform(-3, 3)
            lhs = map_U(wedge.generated_vector([dirac.evolve(h, t, basis) for h in hs],
                                               [dirac.evolve(g, t, basis) for g in gs]))
            rhs = fock.evolve_fock(map_U(wedge.generated_vector(hs, gs)), t, basis)
            dev = max(dev, lhs.distance(rhs))
        record_property("transport_dev", f"{dev:.1e}")
        assert dev < 1e-10
