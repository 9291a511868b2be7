import numpy as np
import pytest

from matgauss import JointMatrixGaussian, MatrixGaussian

ACCEPTANCE_RESULTS = {}


def random_spd(rng, k, lo=0.1, hi=2.0):
    """SPD matrix with eigenvalues uniform in [lo, hi] and a random eigenbasis."""
    q, _ = np.linalg.qr(rng.standard_normal((k, k)))
    return (q * rng.uniform(lo, hi, size=k)) @ q.T


def random_gaussian(rng, m, n):
    return MatrixGaussian(rng.uniform(-1, 1, (m, n)), random_spd(rng, m * n))


def random_joint(rng, m, n_a, n_b):
    full = random_gaussian(rng, m, n_a + n_b)
    return JointMatrixGaussian(full, n_a)


def max_rel_err(x, y):
    """Largest entrywise deviation relative to the largest entry of ``y``."""
    x, y = np.asarray(x), np.asarray(y)
    scale = max(float(np.max(np.abs(y))), np.finfo(float).tiny)
    return float(np.max(np.abs(x - y))) / scale


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {line}")
