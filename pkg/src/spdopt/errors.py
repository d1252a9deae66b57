"""Exception and warning types shared across the package."""


class SpdoptError(Exception):
    """Base class for all spdopt errors."""


class InvalidInput(SpdoptError):
    """Malformed argument: wrong shape, asymmetry, bad parameter range."""


class DomainError(SpdoptError):
    """Operation applied outside its domain, e.g. a non-PD matrix."""


class RankError(SpdoptError):
    """Data matrix does not span the full space."""


class StepTooLarge(SpdoptError):
    """Retraction step would overflow the matrix exponential."""


class NotDescent(SpdoptError):
    """Line search invoked along a non-descent direction."""


class LineSearchError(SpdoptError):
    """Wolfe search exhausted its bracketing budget."""


class NonFiniteCost(SpdoptError):
    """Cost or gradient evaluated to NaN or infinity."""


class ClassViolation(SpdoptError):
    """A weight function left the range required by the solver class."""


class IncompatibleMethod(SpdoptError):
    """Requested solver is not applicable to the problem class."""


class UnsupportedVariant(SpdoptError):
    """Requested operation is not implemented for this distribution."""


class ExistenceWarning(UserWarning):
    """Data configuration may not admit a maximum-likelihood estimate."""
