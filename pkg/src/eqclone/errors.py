"""Exception types raised across the package."""


class EqcloneError(ValueError):
    """Base class for all validation failures raised by eqclone."""


class DimensionError(EqcloneError):
    """Matrix shapes are inconsistent with the requested operation."""


class NotHermitianError(EqcloneError):
    pass


class NotPSDError(EqcloneError):
    """A matrix has an eigenvalue below the clamping threshold."""


class NormalizationError(EqcloneError):
    pass


class DomainError(EqcloneError):
    """A scalar parameter lies outside its admissible range."""
