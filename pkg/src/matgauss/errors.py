"""Exception hierarchy shared by every module of the package."""


class MatGaussError(Exception):
    """Base class for all errors raised by :mod:`matgauss`."""


class DimensionError(MatGaussError, ValueError):
    """Operand shapes are inconsistent with an operation's contract."""


class DomainError(MatGaussError, ValueError):
    """An input lies outside the admissible domain (non-finite, non-positive, ...)."""


class NotPositiveDefiniteError(MatGaussError, ValueError):
    """A matrix required to be symmetric positive-definite failed validation."""


class AsymmetryError(MatGaussError, ValueError):
    """A Kronecker-form covariance violates swap symmetry beyond tolerance."""
