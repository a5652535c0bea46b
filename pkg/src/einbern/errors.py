"""Exception types shared across the package."""


class EinbernError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(EinbernError, ValueError):
    """Tensor or matrix dimensions violate an operation's requirements."""


class DomainError(EinbernError, ValueError):
    """Numeric argument lies outside the valid domain of a formula."""


class SymmetryError(EinbernError, ValueError):
    """Input lacks the pairwise or full symmetry the operation requires."""


class ModelError(EinbernError, ValueError):
    """Random-sum model or experiment configuration is invalid."""


class ApplicabilityError(EinbernError, ValueError):
    """Requested bound does not apply to the given model."""


class NumericalError(EinbernError, RuntimeError):
    """An internal numerical consistency check failed."""


class ConvergenceError(NumericalError):
    """Iterative solver did not reach its tolerance within the iteration cap."""
