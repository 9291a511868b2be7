"""Expected matrix quadratic forms ``E[A^T C B]``."""

import numpy as np

from .errors import DimensionError
from .kronvec import as_matrix, unvec, vec

__all__ = ["expected_quad_form", "expected_quad_form_exact_oracle", "scalar_quad_form"]


def expected_quad_form(s_ba, m_a, m_b, c):
    """``E[A^T C B] = unvec(S_BA^T vec(C), n, p) + M_A^T C M_B``.

    Parameters
    ----------
    s_ba : CrossCovariance
        ``E[(B - M_B) ⊗ (A - M_A)]`` for ``A`` (m x n) and ``B`` (m x p).
    m_a, m_b : array_like
        Means of ``A`` and ``B``.
    c : array_like, shape (m, m)

    Returns
    -------
    ndarray, shape (n, p)
    """
    m_a = as_matrix(m_a, "m_a")
    m_b = as_matrix(m_b, "m_b")
    c = as_matrix(c, "c")
    m, n, p = s_ba.m, s_ba.n, s_ba.p
    if m_a.shape != (m, n) or m_b.shape != (m, p) or c.shape != (m, m):
        raise DimensionError(
            f"expected m_a {(m, n)}, m_b {(m, p)}, c {(m, m)}; "
            f"got {m_a.shape}, {m_b.shape}, {c.shape}"
        )
    return unvec(s_ba.s_ba.T @ vec(c), n, p) + m_a.T @ c @ m_b


def expected_quad_form_exact_oracle(joint, c):
    """Entrywise ``E[A^T C B]`` straight from the joint covariance.

    Independent of the Kronecker bookkeeping: entry ``(i, j)`` sums
    ``c[k, l] * Cov(A[k, i], B[l, j])`` over ``k, l`` with explicit loops.
    """
    c = as_matrix(c, "c")
    m, n_a, n_b = joint.m, joint.n_a, joint.n_b
    if c.shape != (m, m):
        raise DimensionError(f"c must be {m}x{m}, got {c.shape}")
    sab = joint.sigma_ab
    out = np.zeros((n_a, n_b))
    for i in range(n_a):
        for j in range(n_b):
            total = 0.0
            for k in range(m):
                for l in range(m):
                    # A[k, i] sits at vec index i*m + k; B[l, j] at j*m + l.
                    total += c[k, l] * sab[i * m + k, j * m + l]
            out[i, j] = total
    return out + joint.mean_a.T @ c @ joint.mean_b


def scalar_quad_form(eqf, x, u):
    """``x^T E u`` for an expected form ``E`` (n x p), ``x`` (n x 1), ``u`` (p x 1)."""
    eqf = as_matrix(eqf, "eqf")
    x = _column(x, "x")
    u = _column(u, "u")
    if x.shape[0] != eqf.shape[0] or u.shape[0] != eqf.shape[1]:
        raise DimensionError(
            f"x has {x.shape[0]} rows and u {u.shape[0]}; eqf is {eqf.shape}"
        )
    return float((x.T @ eqf @ u)[0, 0])


def _column(v, name):
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    arr = as_matrix(arr, name)
    if arr.shape[1] != 1:
        raise DimensionError(f"{name} must be a column vector, got shape {arr.shape}")
    return arr
