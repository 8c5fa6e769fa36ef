"""Exception types shared across the package."""


class AhpError(Exception):
    """Base class for all domain errors raised by ahpkit."""


class InvalidMatrixError(AhpError):
    """A pairwise matrix violates the reciprocal-matrix invariants."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class ConvergenceError(AhpError):
    """The iterative eigenvector solver did not converge."""

    def __init__(self, iterations, residual):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last L1 change {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


class HierarchyError(AhpError):
    """A hierarchy declaration or operation on one is invalid."""


class ElicitationError(AhpError):
    """A judgment or session operation is invalid."""


class DocumentError(AhpError):
    """A persisted document is malformed, violates its schema, or has an
    unsupported version."""

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)
        self.location = location
