"""Exception types shared across the package."""


class NoTransitionError(ValueError):
    """The requested critical point does not exist for the given couplings."""


class ConvergenceError(RuntimeError):
    """An eigensolve failed to converge under basis or grid refinement.

    The ``residual`` attribute carries the best relative change achieved.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class GridDomainError(ValueError):
    """A real-space grid is too small to contain the requested bound states."""
