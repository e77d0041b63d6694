"""Exception types shared across the simulation library."""


class SimulationError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SimulationError, ValueError):
    """An input value is outside the physically admissible domain."""


class SingularityError(SimulationError):
    """A formula was evaluated at (or too close to) a singular parameter point."""


class NumericalError(SimulationError):
    """A numerical procedure failed (non-convergence, zero pivot, divergence)."""

    def __init__(self, message, completed_steps=None, last_state=None):
        super().__init__(message)
        self.completed_steps = completed_steps
        self.last_state = last_state


class RegimeError(SimulationError):
    """A scenario violates the weak-probe validity conditions without an override."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConfigError(SimulationError, ValueError):
    """A configuration document or run setup is invalid."""
