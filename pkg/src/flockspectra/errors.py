"""Exception hierarchy for the toolkit.

All domain errors derive from :class:`FlockSpectraError` so callers (and the
CLI) can distinguish them from programming errors.
"""


class FlockSpectraError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateCoupling(FlockSpectraError):
    """Raised when a <= 0 or c <= 0; the coupled chain degenerates."""


class DimensionTooSmall(FlockSpectraError):
    """Raised when n < 2; the reduced recursion needs an interior row."""


class DomainError(FlockSpectraError):
    """Raised when an argument is outside the domain of a scalar function."""


class BranchPole(FlockSpectraError):
    """Raised when the cotangent residual is evaluated at a branch pole."""


class ZeroDenominator(FlockSpectraError):
    """Raised when e + a = 0; the cotangent form is not defined there."""


class RootCountAnomaly(FlockSpectraError):
    """Raised when the located roots do not account for the full spectrum.

    Carries diagnostic data: expected count, bulk/special counts and the
    offending parameters.
    """

    def __init__(self, msg, expected=None, bulk_count=None,
                 special_count=None, params=None):
        super().__init__(msg)
        self.expected = expected
        self.bulk_count = bulk_count
        self.special_count = special_count
        self.params = params


class NoConvergence(FlockSpectraError):
    """Raised when an iteration exhausts its budget without converging."""


class UnitCircleCollapse(FlockSpectraError):
    """Raised when a refined off-circle root drifts back to the unit circle."""


class DegenerateRoot(FlockSpectraError):
    """Raised when y is (numerically) +-1 and the eigenvector formula dies."""


class DiscriminantCollapse(FlockSpectraError):
    """Raised when b^2 - 4ac vanishes; no closed-form leader eigenvector."""


class DimensionMismatch(FlockSpectraError):
    """Raised when vector/matrix dimensions disagree."""


class NotDecentralized(FlockSpectraError):
    """Raised when an operation requires decentralized parameters."""


class NotApplicable(FlockSpectraError):
    """Raised when the requested quantity does not exist in this regime."""


class StepSizeTooLarge(FlockSpectraError):
    """Raised when the integration step exceeds the RK4 stability bound."""
