"""Exception types shared across the package."""


class RitzBoundsError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatchError(RitzBoundsError):
    """Operator and vector dimensions disagree."""


class ZeroVectorError(RitzBoundsError):
    """A vector that must be nonzero has (numerically) zero norm."""


class DegenerateGapError(RitzBoundsError):
    """A spectral gap required by a bound formula is zero or numerically degenerate."""


class ShiftAtTargetError(RitzBoundsError):
    """The shift coincides with the target eigenvalue (nu = 0)."""


class OrderingAssumptionError(RitzBoundsError):
    """The shifted-spectrum ordering assumption behind a closed form is broken."""


class ConfigError(RitzBoundsError):
    """An experiment configuration failed validation."""
