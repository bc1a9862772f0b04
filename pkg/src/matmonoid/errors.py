"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or product would exceed the configured work budget."""


class InterpolationError(ValueError):
    """Base class for exact-interpolation failures."""


class InsufficientSamplesError(InterpolationError):
    """Not enough sample points for the requested degree window."""


class InconsistentSamplesError(InterpolationError):
    """A held-out sample is not reproduced by the fitted polynomial."""
