"""The matrix Gaussian distribution with an unrestricted vec covariance.

``A ~ N(M, sigma)`` means ``vec(A)`` is multivariate Gaussian with mean
``vec(M)`` and covariance ``sigma`` of shape ``(nm, nm)``. Every operation
here reduces to the vector Gaussian through :func:`~matgauss.kronvec.vec`.
"""

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg as la

from .errors import DimensionError
from .kronvec import as_matrix, eye, kron, unvec, vec
from .spd import DEFAULT_PD_TOL, SpdMatrix, logdet, solve, spd_from_matrix

__all__ = [
    "MatrixGaussian",
    "JointMatrixGaussian",
    "log_pdf",
    "entropy",
    "sample",
    "affine_map",
    "marginal",
    "conditional",
    "fit_mle",
]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class MatrixGaussian:
    """Gaussian law over ``m x n`` matrices.

    Parameters
    ----------
    mean : array_like, shape (m, n)
    sigma : SpdMatrix or array_like, shape (nm, nm)
        Covariance of ``vec(A)`` (columns stacked). Raw arrays are
        symmetrized and validated as SPD.
    """

    mean: np.ndarray
    sigma: SpdMatrix

    def __post_init__(self):
        mean = as_matrix(self.mean, "mean")
        sigma = spd_from_matrix(self.sigma)
        if sigma.dim != mean.size:
            raise DimensionError(
                f"sigma has dim {sigma.dim} but mean {mean.shape} needs {mean.size}"
            )
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "sigma", sigma)

    @property
    def shape(self):
        return self.mean.shape

    @property
    def m(self):
        return self.mean.shape[0]

    @property
    def n(self):
        return self.mean.shape[1]


@dataclass(frozen=True, eq=False)
class JointMatrixGaussian:
    """Joint law of ``[A B]`` with ``A`` (m x n_a) and ``B`` (m x n_b).

    Since ``vec([A B])`` is ``vec(A)`` followed by ``vec(B)``, the joint is
    just a :class:`MatrixGaussian` over the concatenated matrix; ``n_a``
    records where the column split falls.
    """

    full: MatrixGaussian
    n_a: int

    def __post_init__(self):
        if not 1 <= self.n_a < self.full.n:
            raise DimensionError(
                f"n_a must split {self.full.n} columns into two non-empty blocks, got {self.n_a}"
            )

    @classmethod
    def from_blocks(cls, mean_a, mean_b, sigma_aa, sigma_ab, sigma_bb, tol=DEFAULT_PD_TOL):
        """Assemble ``[[sigma_aa, sigma_ab], [sigma_ab^T, sigma_bb]]`` and validate it."""
        mean_a = as_matrix(mean_a, "mean_a")
        mean_b = as_matrix(mean_b, "mean_b")
        if mean_a.shape[0] != mean_b.shape[0]:
            raise DimensionError(
                f"blocks must share a row count, got {mean_a.shape} and {mean_b.shape}"
            )
        saa = np.asarray(sigma_aa, dtype=np.float64)
        sbb = np.asarray(sigma_bb, dtype=np.float64)
        sab = as_matrix(sigma_ab, "sigma_ab")
        da, db = mean_a.size, mean_b.size
        if saa.shape != (da, da) or sbb.shape != (db, db) or sab.shape != (da, db):
            raise DimensionError(
                f"covariance blocks {saa.shape}, {sab.shape}, {sbb.shape} do not match "
                f"block sizes {da} and {db}"
            )
        full_sigma = np.block([[saa, sab], [sab.T, sbb]])
        full = MatrixGaussian(np.hstack([mean_a, mean_b]), spd_from_matrix(full_sigma, tol))
        return cls(full, mean_a.shape[1])

    @property
    def m(self):
        return self.full.m

    @property
    def n_b(self):
        return self.full.n - self.n_a

    @property
    def mean_a(self):
        return self.full.mean[:, : self.n_a]

    @property
    def mean_b(self):
        return self.full.mean[:, self.n_a :]

    @property
    def _split(self):
        return self.m * self.n_a

    @property
    def sigma_ab(self):
        k = self._split
        return self.full.sigma.entries[:k, k:]

    @cached_property
    def sigma_aa(self):
        k = self._split
        return spd_from_matrix(self.full.sigma.entries[:k, :k])

    @cached_property
    def sigma_bb(self):
        k = self._split
        return spd_from_matrix(self.full.sigma.entries[k:, k:])


def _vec_batch(a):
    """Column-stack each matrix in a stack of shape (N, m, n) -> (N, nm)."""
    return a.transpose(0, 2, 1).reshape(a.shape[0], -1)


def log_pdf(d, a):
    """Log-density of ``d`` at ``a``.

    ``a`` may be a single ``m x n`` matrix (returns a float) or a stack of
    shape ``(N, m, n)`` (returns an array of N values). The normalizer uses
    the vec dimension ``nm``.
    """
    arr = np.asarray(a, dtype=np.float64)
    single = arr.ndim == 2
    if single:
        arr = arr[None]
    if arr.ndim != 3 or arr.shape[1:] != d.shape:
        raise DimensionError(f"expected matrices of shape {d.shape}, got {np.shape(a)}")
    resid = _vec_batch(arr - d.mean)
    z = la.solve_triangular(d.sigma.factor, resid.T, lower=True, check_finite=False)
    quad = np.sum(z * z, axis=0)
    k = d.mean.size
    out = -0.5 * (k * _LOG_2PI + logdet(d.sigma) + quad)
    return float(out[0]) if single else out


def entropy(d):
    """Differential entropy ``0.5 * (nm * ln(2*pi*e) + logdet(sigma))`` in nats."""
    k = d.mean.size
    return 0.5 * (k * (_LOG_2PI + 1.0) + logdet(d.sigma))


def sample(d, rng, size=None):
    """Draw ``M + unvec(L z)`` with ``z`` standard normal and ``L`` the Cholesky factor.

    Parameters
    ----------
    d : MatrixGaussian
    rng : numpy.random.Generator
        Caller-owned random state; one per thread.
    size : int, optional
        If given, return a stack of shape ``(size, m, n)``. Draws consume the
        generator in the same order as ``size`` successive single calls.
    """
    if not isinstance(rng, np.random.Generator):
        raise TypeError("rng must be a numpy.random.Generator")
    m, n = d.shape
    if size is None:
        z = rng.standard_normal(m * n)
        return d.mean + unvec(d.sigma.factor @ z, m, n)
    z = rng.standard_normal((int(size), m * n))
    draws = (z @ d.sigma.factor.T).reshape(int(size), n, m).transpose(0, 2, 1)
    return d.mean + draws


def affine_map(d, b, c=None, tol=DEFAULT_PD_TOL):
    """Law of ``B A + C``: ``N(B M + C, (I_n ⊗ B) sigma (I_n ⊗ B)^T)``.

    ``b`` is ``p x m`` and ``c`` is ``p x n`` (zero if omitted). A ``b``
    without full row rank gives a degenerate law and raises
    :class:`~matgauss.errors.NotPositiveDefiniteError`.
    """
    b = as_matrix(b, "b")
    m, n = d.shape
    if b.shape[1] != m:
        raise DimensionError(f"b must have {m} columns, got shape {b.shape}")
    p = b.shape[0]
    c = np.zeros((p, n)) if c is None else as_matrix(c, "c")
    if c.shape != (p, n):
        raise DimensionError(f"c must have shape {(p, n)}, got {c.shape}")
    t = kron(eye(n), b)
    cov = t @ d.sigma.entries @ t.T
    return MatrixGaussian(b @ d.mean + c, spd_from_matrix(cov, tol))


def marginal(j, which):
    """Marginal law of block ``"a"`` or ``"b"`` of a joint."""
    which = str(which).lower()
    if which == "a":
        return MatrixGaussian(j.mean_a, j.sigma_aa)
    if which == "b":
        return MatrixGaussian(j.mean_b, j.sigma_bb)
    raise ValueError(f"which must be 'a' or 'b', got {which!r}")


def conditional(j, observed_b, tol=DEFAULT_PD_TOL):
    """Law of ``A`` given ``B = observed_b``.

    Mean ``M_A + unvec(S_ab S_bb^-1 vec(observed_b - M_B), m, n_a)``,
    covariance the Schur complement ``S_aa - S_ab S_bb^-1 S_ab^T``.
    """
    obs = as_matrix(observed_b, "observed_b")
    if obs.shape != j.mean_b.shape:
        raise DimensionError(f"observed_b must have shape {j.mean_b.shape}, got {obs.shape}")
    sab = j.sigma_ab
    gain = solve(j.sigma_bb, sab.T).T
    shift = gain @ vec(obs - j.mean_b)
    mean = j.mean_a + unvec(shift, j.m, j.n_a)
    schur = j.sigma_aa.entries - gain @ sab.T
    return MatrixGaussian(mean, spd_from_matrix(schur, tol))


def fit_mle(samples, jitter=0.0, tol=DEFAULT_PD_TOL):
    """Maximum-likelihood fit with ``1/N`` covariance plus ``jitter * I``.

    Warns when ``N <= nm``, where the sample covariance is singular and only
    ``jitter`` can keep it positive-definite.
    """
    try:
        arr = np.asarray(samples, dtype=np.float64)
    except ValueError:
        raise DimensionError("samples do not all share one shape") from None
    if arr.ndim != 3:
        raise DimensionError(
            f"samples must be a sequence of equally shaped matrices, got shape {arr.shape}"
        )
    count = arr.shape[0]
    if count < 2:
        raise DimensionError(f"fit_mle needs at least 2 samples, got {count}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("samples contain non-finite entries")
    k = arr.shape[1] * arr.shape[2]
    if count <= k:
        warnings.warn(
            f"{count} samples for a {k}-dimensional covariance; the estimate is singular "
            "without jitter",
            RuntimeWarning,
            stacklevel=2,
        )
    mean = arr.mean(axis=0)
    resid = _vec_batch(arr - mean)
    cov = resid.T @ resid / count + float(jitter) * np.eye(k)
    return MatrixGaussian(mean, spd_from_matrix(cov, tol))
