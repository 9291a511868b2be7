"""Matrix Gaussian distributions with a full vec covariance."""

__version__ = "0.1.0"

from .covrepr import (
    CrossCovariance,
    KroneckerCovariance,
    cross_cov_from_blocks,
    cross_cov_from_joint,
    s_to_sigma,
    sigma_to_s,
)
from .errors import (
    AsymmetryError,
    DimensionError,
    DomainError,
    MatGaussError,
    NotPositiveDefiniteError,
)
from .kronvec import as_matrix, kron, unvec, vec
from .matnorm import (
    MatrixNormal,
    check_diag_representable,
    mn_to_full,
    nearest_kron_covariance,
    param_count_ratio,
)
from .mgauss import (
    JointMatrixGaussian,
    MatrixGaussian,
    affine_map,
    conditional,
    entropy,
    fit_mle,
    log_pdf,
    marginal,
    sample,
)
from .quadform import expected_quad_form, expected_quad_form_exact_oracle, scalar_quad_form
from .spd import SpdMatrix, logdet, solve, spd_from_matrix
