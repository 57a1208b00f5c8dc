"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`GaussianError`, which is itself a :class:`ValueError` so that
callers treating bad numerical input generically keep working.
"""


class GaussianError(ValueError):
    """Base class for all package errors."""


class DimensionError(GaussianError):
    """Shapes or mode counts are inconsistent."""


class PhysicalityError(GaussianError):
    """A covariance matrix violates the Heisenberg inequality, or a state
    is mixed where a pure one is required.

    Attributes:
        value: the offending quantity (minimum eigenvalue of gamma + i Omega,
            or the worst symplectic eigenvalue deviation), when available.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class PreconditionError(GaussianError):
    """An operation's precondition does not hold (e.g. two purifications
    whose reduced states differ)."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class GaugeError(GaussianError):
    """The local symplectic gauge could not be resolved to the normal form
    within tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NumericError(GaussianError):
    """A matrix function failed to produce a usable result."""


class CertificationError(GaussianError):
    """A synthesized attack violated the cheating bound. Always a bug."""
