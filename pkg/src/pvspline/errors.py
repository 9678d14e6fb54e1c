"""Exception types raised across the package."""


class InvalidGridError(ValueError):
    """Node list does not describe a partition of [-1, 1]."""


class DomainError(ValueError):
    """Argument lies outside the domain of the operation."""


class SingularEvaluationError(ValueError):
    """Closed-form segment integral requested at one of its own endpoints."""


class BranchError(ValueError):
    """Complex point lies on the cut [-1, 1]."""


class UnsupportedClassError(ValueError):
    """Function class not covered by the requested error bound."""


class InsufficientDataError(ValueError):
    """Too few usable rows to fit a convergence order."""


class ConvergenceError(RuntimeError):
    """Adaptive integration stopped before reaching its tolerance.

    The best available estimate and its error bound are kept on the
    exception so callers can decide whether to use them anyway.
    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
