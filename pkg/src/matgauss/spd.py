"""Symmetric positive-definite matrices with a cached Cholesky factor."""

import numpy as np
import scipy.linalg as la

from .errors import DimensionError, NotPositiveDefiniteError
from .kronvec import as_matrix

__all__ = ["SpdMatrix", "spd_from_matrix", "solve", "logdet", "DEFAULT_PD_TOL"]

DEFAULT_PD_TOL = 1e-12


class SpdMatrix:
    """Immutable SPD matrix holding its lower Cholesky factor.

    Build instances with :func:`spd_from_matrix`; the constructor assumes its
    arguments are already validated.

    Attributes
    ----------
    entries : ndarray, shape (dim, dim)
        The (exactly symmetric) matrix.
    factor : ndarray, shape (dim, dim)
        Lower-triangular ``L`` with ``L @ L.T == entries`` up to rounding.
    """

    __slots__ = ("entries", "factor")

    def __init__(self, entries, factor):
        entries.setflags(write=False)
        factor.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "factor", factor)

    def __setattr__(self, name, value):
        raise AttributeError("SpdMatrix is immutable")

    @property
    def dim(self):
        return self.entries.shape[0]

    def solve(self, b):
        return solve(self, b)

    def logdet(self):
        return logdet(self)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def __repr__(self):
        return f"SpdMatrix(dim={self.dim})"


def spd_from_matrix(a, tol=DEFAULT_PD_TOL):
    """Symmetrize ``a`` and validate it as positive-definite.

    A Cholesky pivot ``L[i, i]**2`` at or below ``tol * max(diag(a))`` is
    rejected, which makes the test invariant to the overall scale of ``a``.

    Raises
    ------
    DimensionError
        If ``a`` is not square.
    NotPositiveDefiniteError
        If factorization fails or a pivot is too small.
    """
    if isinstance(a, SpdMatrix):
        return a
    a = as_matrix(a, "a")
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"SPD matrix must be square, got shape {a.shape}")
    sym = (a + a.T) / 2.0
    max_diag = float(np.max(np.diag(sym)))
    if max_diag <= 0.0:
        raise NotPositiveDefiniteError("matrix has no positive diagonal entry")
    try:
        factor = la.cholesky(sym, lower=True, check_finite=False)
    except la.LinAlgError as exc:
        raise NotPositiveDefiniteError(f"Cholesky factorization failed: {exc}") from None
    pivots = np.diag(factor) ** 2
    threshold = tol * max_diag
    if np.any(pivots <= threshold):
        i = int(np.argmin(pivots))
        raise NotPositiveDefiniteError(
            f"Cholesky pivot {i} is {pivots[i]:.3e}, not above {threshold:.3e}"
        )
    return SpdMatrix(sym, factor)


def solve(s, b):
    """Solve ``s @ x = b`` using the cached Cholesky factor."""
    b = as_matrix(b, "b")
    if b.shape[0] != s.dim:
        raise DimensionError(f"right-hand side has {b.shape[0]} rows, expected {s.dim}")
    return la.cho_solve((s.factor, True), b, check_finite=False)


def logdet(s):
    """Natural log-determinant, ``2 * sum(log(diag(L)))``."""
    return 2.0 * float(np.sum(np.log(np.diag(s.factor))))
