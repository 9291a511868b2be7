"""Kronecker products, vectorization and inverse vectorization.

Matrices are plain two-dimensional ``float64`` numpy arrays. Column vectors
are arrays of shape ``(k, 1)``. ``vec`` stacks columns (column-major order)
regardless of how numpy stores the array.
"""

import numpy as np

from .errors import DimensionError, DomainError

__all__ = ["as_matrix", "kron", "vec", "unvec", "eye"]

_MAX_ENTRIES = np.iinfo(np.intp).max


def as_matrix(a, name="matrix"):
    """Validate ``a`` as a finite real matrix and return a float64 copy.

    Scalars become 1x1 matrices; anything that is not two-dimensional with at
    least one row and one column is rejected.
    """
    arr = np.array(a, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must have at least one row and column, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


def eye(k):
    return np.eye(k, dtype=np.float64)


def kron(a, b):
    """Kronecker product ``a ⊗ b``.

    Block ``(i, j)`` of the result is ``a[i, j] * b``; the result has shape
    ``(a.rows * b.rows, a.cols * b.cols)``.
    """
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows * cols > _MAX_ENTRIES:
        raise DimensionError(f"Kronecker product of shape ({rows}, {cols}) is too large")
    return np.kron(a, b)


def vec(a):
    """Stack the columns of ``a`` into a column vector of length rows*cols."""
    a = as_matrix(a, "a")
    return a.reshape(-1, 1, order="F")


def unvec(v, m, n):
    """Inverse of :func:`vec`: reshape a column vector into an ``m x n`` matrix.

    Parameters
    ----------
    v : array_like
        Column vector with ``m * n`` entries. A flat 1-D array is accepted.
    m, n : int
        Shape of the result. Always explicit; never inferred from ``v``.
    """
    m, n = int(m), int(n)
    if m < 1 or n < 1:
        raise DimensionError(f"unvec shape must be positive, got ({m}, {n})")
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    arr = as_matrix(arr, "v")
    if arr.shape[1] != 1:
        raise DimensionError(f"unvec expects a column vector, got shape {arr.shape}")
    if arr.shape[0] != m * n:
        raise DimensionError(f"cannot unvec {arr.shape[0]} entries into ({m}, {n})")
    return arr.reshape(m, n, order="F")
