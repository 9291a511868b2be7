import math

import numpy as np
import pytest

from matgauss import DimensionError, NotPositiveDefiniteError, kron, logdet, solve
from matgauss import spd_from_matrix

from conftest import random_spd


def test_identity_factor():
    s = spd_from_matrix(np.eye(3), 1e-12)
    np.testing.assert_array_equal(s.factor, np.eye(3))
    assert s.dim == 3


def test_hand_cholesky():
    s = spd_from_matrix([[4, 2], [2, 2]], 1e-12)
    np.testing.assert_allclose(s.factor, [[2, 0], [1, 1]], rtol=0, atol=1e-15)


def test_indefinite_rejected():
    with pytest.raises(NotPositiveDefiniteError):
        spd_from_matrix([[1, 2], [2, 1]], 1e-12)


def test_non_square_rejected():
    with pytest.raises(DimensionError):
        spd_from_matrix(np.ones((2, 3)))


def test_pivot_tolerance_is_scale_relative():
    with pytest.raises(NotPositiveDefiniteError):
        spd_from_matrix(np.diag([1.0, 1e-13]))
    spd_from_matrix(np.diag([1e-20, 1e-20]))
    spd_from_matrix(np.diag([1.0, 1e-13]), tol=1e-14)


def test_symmetrized_on_construction():
    s = spd_from_matrix([[2.0, 1.0], [0.5, 2.0]])
    np.testing.assert_array_equal(s.entries, [[2.0, 0.75], [0.75, 2.0]])
    assert np.array_equal(s.entries, s.entries.T)


def test_immutable():
    s = spd_from_matrix(np.eye(2))
    with pytest.raises(ValueError):
        s.entries[0, 0] = 5.0
    with pytest.raises(AttributeError):
        s.entries = np.eye(2)


def test_factor_reproduces_entries(rng):
    for k in range(1, 9):
        a = random_spd(rng, k)
        s = spd_from_matrix(a)
        err = np.linalg.norm(s.factor @ s.factor.T - s.entries) / np.linalg.norm(s.entries)
        assert err <= 1e-10


def test_solve_examples(rng):
    b = rng.standard_normal((4, 2))
    np.testing.assert_array_equal(solve(spd_from_matrix(np.eye(4)), b), b)
    np.testing.assert_allclose(solve(spd_from_matrix(np.diag([2.0, 4.0])), [[2.0], [4.0]]), [[1], [1]])
    with pytest.raises(DimensionError):
        solve(spd_from_matrix(np.eye(3)), b)


def test_solve_round_trip(rng):
    for k in range(1, 11):
        s = spd_from_matrix(random_spd(rng, k))
        x = rng.standard_normal((k, 3))
        got = solve(s, s.entries @ x)
        assert np.linalg.norm(got - x) <= 1e-8 * np.linalg.norm(x)


def test_logdet_examples():
    assert logdet(spd_from_matrix(np.eye(5))) == 0.0
    assert logdet(spd_from_matrix(np.diag([math.e, math.e]))) == pytest.approx(2.0, abs=1e-15)


def test_logdet_matches_eigenvalues(rng):
    for k in range(1, 9):
        a = random_spd(rng, k)
        expected = float(np.sum(np.log(np.linalg.eigvalsh(a))))
        assert abs(logdet(spd_from_matrix(a)) - expected) <= 1e-9


def test_quadratic_form_positive(rng):
    s = spd_from_matrix(random_spd(rng, 6, lo=1e-3))
    for _ in range(100):
        v = rng.standard_normal(6)
        assert v @ s.entries @ v > 0


def test_logdet_of_kron(rng):
    for _ in range(20):
        nu, nv = rng.integers(1, 5, size=2)
        u = spd_from_matrix(random_spd(rng, nu))
        v = spd_from_matrix(random_spd(rng, nv))
        uv = spd_from_matrix(kron(u.entries, v.entries))
        assert abs(logdet(uv) - (nv * logdet(u) + nu * logdet(v))) <= 1e-9
