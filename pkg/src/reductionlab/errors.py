"""Exception types raised across the package."""


class ReductionLabError(Exception):
    """Base class for package errors."""


class DomainError(ReductionLabError, ValueError):
    """An argument lies outside the domain of an operation."""


class IntegrationDiverged(ReductionLabError, ArithmeticError):
    """A non-finite state appeared during integration."""

    def __init__(self, time: float):
        super().__init__(f"integration produced a non-finite state at t={time!r}")
        self.time = time


class SingularityError(ReductionLabError, ArithmeticError):
    """Evaluation hit a singular configuration (collision, pole, degeneracy)."""


class ConstraintViolation(ReductionLabError, ValueError):
    """A point does not satisfy the constraints it is required to satisfy."""


class RewriteBudgetExceeded(ReductionLabError, RuntimeError):
    """Normal-form reduction did not terminate within its step budget."""


class ConfigError(ReductionLabError, ValueError):
    """Invalid scenario or solver configuration."""
