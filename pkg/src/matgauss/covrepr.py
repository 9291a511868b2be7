"""Conversion between the vec covariance and the Kronecker covariance.

For an ``m x n`` random matrix ``A`` with mean ``M`` there are two equivalent
second-moment objects:

* ``sigma = E[vec(A - M) vec(A - M)^T]`` of shape ``(nm, nm)``;
* ``S = E[(A - M) ⊗ (A - M)]`` of shape ``(m^2, n^2)``.

Index convention (0-based throughout the code)::

    S[i*m + k, j*n + l] = Cov(A[i, j], A[k, l]) = sigma[j*m + i, l*m + k]

so block ``(i, j)`` of ``S`` (an ``m x n`` matrix) is the unvec of column
``j*m + i`` of ``sigma``. Both directions are pure index permutations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AsymmetryError, DimensionError
from .kronvec import as_matrix
from .spd import DEFAULT_PD_TOL, SpdMatrix, spd_from_matrix

__all__ = [
    "KroneckerCovariance",
    "CrossCovariance",
    "sigma_to_s",
    "s_to_sigma",
    "cross_cov_from_blocks",
    "cross_cov_from_joint",
    "swap_asymmetry",
    "SWAP_TOL",
]

SWAP_TOL = 1e-10


@dataclass(frozen=True)
class KroneckerCovariance:
    """``S = E[(A - M) ⊗ (A - M)]`` for an ``m x n`` random matrix."""

    m: int
    n: int
    s: np.ndarray

    def __post_init__(self):
        s = as_matrix(self.s, "s")
        if s.shape != (self.m * self.m, self.n * self.n):
            raise DimensionError(
                f"S must have shape ({self.m ** 2}, {self.n ** 2}) for m={self.m}, n={self.n}; "
                f"got {s.shape}"
            )
        s.setflags(write=False)
        object.__setattr__(self, "s", s)


@dataclass(frozen=True)
class CrossCovariance:
    """``S_BA = E[(B - M_B) ⊗ (A - M_A)]`` for ``A`` (m x n) and ``B`` (m x p).

    ``s_ba`` is dense with ``m`` row-blocks of height ``m`` and ``p``
    column-blocks of width ``n``::

        s_ba[i*m + k, j*n + l] = Cov(B[i, j], A[k, l])
    """

    m: int
    n: int
    p: int
    s_ba: np.ndarray

    def __post_init__(self):
        s = as_matrix(self.s_ba, "s_ba")
        if s.shape != (self.m * self.m, self.p * self.n):
            raise DimensionError(
                f"S_BA must have shape ({self.m ** 2}, {self.p * self.n}); got {s.shape}"
            )
        s.setflags(write=False)
        object.__setattr__(self, "s_ba", s)


def _sigma_entries(sigma):
    if isinstance(sigma, SpdMatrix):
        return sigma.entries
    return as_matrix(sigma, "sigma")


def sigma_to_s(sigma, m, n):
    """Rearrange the vec covariance ``sigma`` (nm x nm) into ``S`` (m^2 x n^2)."""
    sig = _sigma_entries(sigma)
    if sig.shape != (n * m, n * m):
        raise DimensionError(f"sigma must be {n * m}x{n * m} for m={m}, n={n}; got {sig.shape}")
    # r[j, i, l, k] = sigma[j*m + i, l*m + k]  ->  s4[i, k, j, l]
    r = sig.reshape(n, m, n, m)
    s = r.transpose(1, 3, 0, 2).reshape(m * m, n * n)
    return KroneckerCovariance(m, n, s)


def swap_asymmetry(s):
    """Largest violation of ``S[i*m+k, j*n+l] == S[k*m+i, l*n+j]``."""
    s4 = s.s.reshape(s.m, s.m, s.n, s.n)
    return float(np.max(np.abs(s4 - s4.transpose(1, 0, 3, 2))))


def s_to_sigma(s, tol=SWAP_TOL, pd_tol=DEFAULT_PD_TOL):
    """Inverse of :func:`sigma_to_s`, validated as SPD.

    Raises
    ------
    AsymmetryError
        If ``S`` violates swap symmetry by more than ``tol``.
    NotPositiveDefiniteError
        If the reconstructed covariance is not positive-definite.
    """
    gap = swap_asymmetry(s)
    if gap > tol:
        raise AsymmetryError(f"S violates swap symmetry by {gap:.3e} (tolerance {tol:.1e})")
    m, n = s.m, s.n
    sig = s.s.reshape(m, m, n, n).transpose(2, 0, 3, 1).reshape(n * m, n * m)
    return spd_from_matrix(sig, pd_tol)


def cross_cov_from_blocks(sigma_ab, m, n, p):
    """Build ``S_BA`` from the cross block ``sigma_ab = Cov(vec(A), vec(B))``.

    ``sigma_ab`` has shape ``(n*m, p*m)``. Passing ``sigma_ab = sigma_aa``
    with ``p = n`` yields ``S_AA``, i.e. the ``B = A`` specialization, which
    a joint distribution cannot express because its covariance is singular.
    """
    sab = as_matrix(sigma_ab, "sigma_ab")
    if sab.shape != (n * m, p * m):
        raise DimensionError(f"sigma_ab must be {n * m}x{p * m}; got {sab.shape}")
    # r[l, k, j, i] = sigma_ab[l*m + k, j*m + i]  ->  s4[i, k, j, l]
    r = sab.reshape(n, m, p, m)
    s = r.transpose(3, 1, 2, 0).reshape(m * m, p * n)
    return CrossCovariance(m, n, p, s)


def cross_cov_from_joint(joint):
    """``S_BA`` for the two blocks of a :class:`~matgauss.mgauss.JointMatrixGaussian`."""
    return cross_cov_from_blocks(joint.sigma_ab, joint.m, joint.n_a, joint.n_b)
