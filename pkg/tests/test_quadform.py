import numpy as np
import pytest

from matgauss import (
    CrossCovariance,
    DimensionError,
    JointMatrixGaussian,
    cross_cov_from_blocks,
    cross_cov_from_joint,
    expected_quad_form,
    expected_quad_form_exact_oracle,
    sample,
    scalar_quad_form,
)

from conftest import random_joint, random_spd


def eqf_of_joint(j, c):
    return expected_quad_form(cross_cov_from_joint(j), j.mean_a, j.mean_b, c)


def swapped(j):
    """The same law with the roles of A and B exchanged."""
    return JointMatrixGaussian.from_blocks(
        j.mean_b, j.mean_a, j.sigma_bb.entries, j.sigma_ab.T, j.sigma_aa.entries
    )


def random_dims(rng):
    return tuple(int(x) for x in rng.integers(1, 4, size=3))


def test_zero_cross_covariance_is_deterministic_term(rng):
    m_a, m_b, c = rng.standard_normal((3, 2)), rng.standard_normal((3, 1)), rng.standard_normal((3, 3))
    s = CrossCovariance(3, 2, 1, np.zeros((9, 2)))
    np.testing.assert_array_equal(expected_quad_form(s, m_a, m_b, c), m_a.T @ c @ m_b)


def test_scalar_second_moment():
    sigma2, mu, c = 0.7, -1.3, 2.5
    s = cross_cov_from_blocks([[sigma2]], 1, 1, 1)
    got = expected_quad_form(s, [[mu]], [[mu]], [[c]])
    assert got[0, 0] == pytest.approx(c * (sigma2 + mu**2), abs=1e-15)


def test_vector_case_trace_formula(rng):
    for m in (2, 3, 5):
        sigma = random_spd(rng, m)
        mu = rng.uniform(-1, 1, (m, 1))
        c = rng.uniform(-1, 1, (m, m))
        s = cross_cov_from_blocks(sigma, m, 1, 1)
        got = expected_quad_form(s, mu, mu, c)[0, 0]
        expected = np.trace(c @ sigma) + (mu.T @ c @ mu)[0, 0]
        assert abs(got - expected) <= 1e-12


def test_matches_exact_oracle(rng):
    for _ in range(100):
        m, n_a, n_b = random_dims(rng)
        j = random_joint(rng, m, n_a, n_b)
        c = rng.uniform(-1, 1, (m, m))
        got = eqf_of_joint(j, c)
        assert got.shape == (n_a, n_b)
        np.testing.assert_allclose(got, expected_quad_form_exact_oracle(j, c), rtol=0, atol=1e-12)


def test_oracle_trivial_cases(rng):
    j = JointMatrixGaussian.from_blocks(
        rng.standard_normal((2, 2)), rng.standard_normal((2, 1)),
        random_spd(rng, 4), np.zeros((4, 2)), random_spd(rng, 2),
    )
    c = rng.standard_normal((2, 2))
    np.testing.assert_allclose(
        expected_quad_form_exact_oracle(j, c), j.mean_a.T @ c @ j.mean_b, rtol=0, atol=1e-15
    )
    np.testing.assert_array_equal(expected_quad_form_exact_oracle(j, np.zeros((2, 2))), np.zeros((2, 1)))


def test_transpose_consistency(rng):
    for _ in range(30):
        m, n_a, n_b = random_dims(rng)
        j = random_joint(rng, m, n_a, n_b)
        c = rng.uniform(-1, 1, (m, m))
        np.testing.assert_allclose(eqf_of_joint(swapped(j), c.T), eqf_of_joint(j, c).T, rtol=0, atol=1e-12)


def test_linear_in_c(rng):
    for _ in range(30):
        m, n_a, n_b = random_dims(rng)
        j = random_joint(rng, m, n_a, n_b)
        c1, c2 = rng.uniform(-1, 1, (2, m, m))
        alpha = rng.uniform(-2, 2)
        lhs = eqf_of_joint(j, c1 + alpha * c2)
        rhs = eqf_of_joint(j, c1) + alpha * eqf_of_joint(j, c2)
        np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12)


def test_dimension_errors(rng):
    j = random_joint(rng, 2, 1, 2)
    s = cross_cov_from_joint(j)
    with pytest.raises(DimensionError):
        expected_quad_form(s, j.mean_a, j.mean_b, np.eye(3))
    with pytest.raises(DimensionError):
        expected_quad_form(s, j.mean_b, j.mean_a, np.eye(2))
    with pytest.raises(DimensionError):
        expected_quad_form_exact_oracle(j, np.eye(3))


def test_scalar_form_examples(rng):
    eqf = rng.standard_normal((3, 2))
    for i in range(3):
        for k in range(2):
            assert scalar_quad_form(eqf, np.eye(3)[:, [i]], np.eye(2)[:, [k]]) == eqf[i, k]
    x = rng.standard_normal((4, 1))
    assert scalar_quad_form(np.eye(4), x, x) == pytest.approx(float((x.T @ x)[0, 0]), abs=1e-14)
    with pytest.raises(DimensionError):
        scalar_quad_form(eqf, np.ones((2, 1)), np.ones((2, 1)))
    with pytest.raises(DimensionError):
        scalar_quad_form(eqf, np.ones((1, 3)), np.ones((2, 1)))


@pytest.mark.slow
@pytest.mark.parametrize("dims", [(1, 1, 1), (2, 1, 2), (3, 2, 1), (3, 3, 3)])
def test_scalar_form_monte_carlo(dims):
    m, n_a, n_b = dims
    rng = np.random.default_rng(500 + 100 * m + 10 * n_a + n_b)
    j = random_joint(rng, m, n_a, n_b)
    c = rng.uniform(-1, 1, (m, m))
    x = rng.standard_normal(n_a)
    u = rng.standard_normal(n_b)
    x, u = x / np.linalg.norm(x), u / np.linalg.norm(u)
    draws = sample(j.full, rng, size=200_000)
    vals = np.einsum("i,tki,kl,tlj,j->t", x, draws[:, :, :n_a], c, draws[:, :, n_a:], u, optimize=True)
    assert abs(vals.mean() - scalar_quad_form(eqf_of_joint(j, c), x, u)) <= 0.03
