"""The Kronecker-structured matrix normal family and how much it can express.

``X ~ MN(M, U, V)`` for an ``n x p`` matrix ``X`` means
``vec(X) ~ N(vec(M), V ⊗ U)``: ``U`` is the ``n x n`` row covariance and
``V`` the ``p x p`` column covariance. This family has ``n^2 + p^2``
covariance parameters against ``(np)^2`` for the full matrix Gaussian, and
the diagnostics here measure what that costs.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NotPositiveDefiniteError
from .kronvec import as_matrix, kron
from .mgauss import MatrixGaussian
from .spd import SpdMatrix, spd_from_matrix

__all__ = [
    "MatrixNormal",
    "DiagRepresentability",
    "NearestKron",
    "mn_to_full",
    "param_count_ratio",
    "check_diag_representable",
    "nearest_kron_covariance",
]


@dataclass(frozen=True)
class MatrixNormal:
    mean: np.ndarray
    u: SpdMatrix
    v: SpdMatrix

    def __post_init__(self):
        mean = as_matrix(self.mean, "mean")
        u = spd_from_matrix(self.u)
        v = spd_from_matrix(self.v)
        if u.dim != mean.shape[0] or v.dim != mean.shape[1]:
            raise DimensionError(
                f"u ({u.dim}) and v ({v.dim}) must match mean rows and cols {mean.shape}"
            )
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class DiagRepresentability:
    representable: bool
    u_diag: np.ndarray | None = None
    v_diag: np.ndarray | None = None


@dataclass(frozen=True)
class NearestKron:
    """Best Frobenius-norm Kronecker approximation ``sigma ≈ V ⊗ U``.

    ``residual`` is relative, ``||sigma - V ⊗ U||_F / ||sigma||_F``;
    ``abs_residual`` is the unnormalized Frobenius error.
    """

    u: np.ndarray
    v: np.ndarray
    residual: float
    abs_residual: float
    positive_definite: bool


def mn_to_full(mn):
    """Embed a matrix normal as the matrix Gaussian with ``sigma = V ⊗ U``."""
    return MatrixGaussian(mn.mean, kron(mn.v.entries, mn.u.entries))


def param_count_ratio(n, p):
    """Covariance parameter counts ``(n^2 + p^2, (np)^2, ratio)``."""
    n, p = int(n), int(p)
    if n < 1 or p < 1:
        raise DomainError(f"n and p must be positive, got n={n}, p={p}")
    structured = n * n + p * p
    full = (n * p) ** 2
    return structured, full, structured / full


def check_diag_representable(variances, rel_tol=1e-9):
    """Can independent entries with these variances be a matrix normal?

    With a diagonal covariance, ``V ⊗ U`` must be diagonal too, so the
    question is whether ``variances[i, j] == u[i] * v[j]`` for positive
    vectors ``u``, ``v``, i.e. whether the variance grid is rank one. The fit
    is additive in log space (row effect plus column effect), accepted if
    every entry is reproduced within ``rel_tol`` relative error. The
    returned factorization is normalized to ``u[0] == 1``.

    For a 2x2 grid this is exactly ``s11 / s12 == s21 / s22``.
    """
    var = as_matrix(variances, "variances")
    if np.any(var <= 0.0):
        raise DomainError("variances must all be strictly positive")
    logs = np.log(var)
    row_eff = logs.mean(axis=1)
    col_eff = logs.mean(axis=0) - logs.mean()
    u = np.exp(row_eff - row_eff[0])
    v = np.exp(row_eff[0] + col_eff)
    fitted = np.outer(u, v)
    err = np.max(np.abs(fitted - var) / var)
    if err <= rel_tol:
        return DiagRepresentability(True, u, v)
    return DiagRepresentability(False)


def _rearrange(sig, n, p):
    """Row ``j*p + l`` holds block ``(j, l)`` (n x n) of ``sig`` flattened row-major.

    Under this map ``V ⊗ U`` becomes the rank-one ``outer(V.ravel(), U.ravel())``.
    """
    return sig.reshape(p, n, p, n).transpose(0, 2, 1, 3).reshape(p * p, n * n)


def nearest_kron_covariance(sigma, n, p, iters=100):
    """Nearest ``V ⊗ U`` to ``sigma`` in Frobenius norm.

    Rearranges ``sigma`` so that Kronecker products become rank-one
    matrices, then finds the leading singular pair by ``iters`` steps of
    power iteration started from the first basis vector. ``U`` is scaled to
    ``trace(U) == n``, and the scale is moved into ``V``. The optimal pair
    need not be positive-definite; that is reported, not raised.
    """
    sig = sigma.entries if isinstance(sigma, SpdMatrix) else as_matrix(sigma, "sigma")
    n, p = int(n), int(p)
    if sig.shape != (n * p, n * p):
        raise DimensionError(f"sigma must be {n * p}x{n * p}, got {sig.shape}")
    if iters < 1:
        raise DomainError(f"iters must be positive, got {iters}")
    r = _rearrange(sig, n, p)
    u_vec = np.zeros(n * n)
    u_vec[0] = 1.0
    for _ in range(int(iters)):
        v_vec = r @ u_vec
        u_vec = r.T @ v_vec
        norm = np.linalg.norm(u_vec)
        if norm == 0.0:
            break
        u_vec /= norm
    v_vec = r @ u_vec

    u = u_vec.reshape(n, n)
    v = v_vec.reshape(p, p)
    tr = np.trace(u)
    if tr != 0.0:
        scale = n / tr
        u = u * scale
        v = v / scale
    u = (u + u.T) / 2.0
    v = (v + v.T) / 2.0

    abs_res = float(np.linalg.norm(sig - np.kron(v, u)))
    total = float(np.linalg.norm(sig))
    residual = abs_res / total if total > 0.0 else 0.0
    return NearestKron(u, v, residual, abs_res, _is_pd(u) and _is_pd(v))


def _is_pd(a):
    try:
        spd_from_matrix(a)
    except NotPositiveDefiniteError:
        return False
    return True
