import math

import pytest

from seawedge.vectors import OneParticleVector, mode, truncate


def test_rejects_mode_zero():
    with pytest.raises(ValueError):
        OneParticleVector({0: 1.0})


def test_split_and_norm():
    f = OneParticleVector({1: 3.0, -2: 4j, 5: 0.0})
    assert f.support() == (-2, 1)
    assert f.norm() == pytest.approx(5.0)
    assert f.positive_part() == mode(1, 3.0)
    assert f.negative_part() == mode(-2, 4j)
    assert f.positive_part() + f.negative_part() == f


def test_conjugate_pairs_and_is_involutive():
    f = OneParticleVector({1: 1 + 2j, -3: -1j})
    assert f.conjugate() == OneParticleVector({-1: 1 - 2j, 3: 1j})
    assert f.conjugate().conjugate() == f


def test_inner_is_antilinear_in_first_slot():
    f, g = mode(1, 2j), mode(1, 3.0)
    assert f.inner(g) == pytest.approx(-6j)


def test_pruning_drops_dust():
    f = mode(1) + mode(1, -1 + 1e-17)
    assert len(f) == 0


def test_truncate_tail_bound():
    # coefficients 2^{-|i|/2}: ||f||^2 = 2 * sum_{k>=1} 2^{-k} = 2
    coeff = lambda i: 2.0 ** (-abs(i) / 2)
    f_n, tail = truncate(coeff, 5, 2.0)
    assert f_n.support() == tuple(i for i in range(-5, 6) if i)
    assert tail == pytest.approx(math.sqrt(2 * 2.0**-5))


def test_truncate_rejects_inconsistent_norm():
    with pytest.raises(ValueError):
        truncate(lambda i: 1.0, 3, 1.0)
