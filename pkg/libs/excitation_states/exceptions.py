"""Custom exceptions for excitation-state computations."""


class ExcitationStateError(Exception):
    """Base exception for excitation-state operations."""

    pass


class HypergraphValidationError(ExcitationStateError):
    """Raised when a hypergraph or family parameter set is invalid."""

    pass


class BudgetExceededError(ExcitationStateError):
    """Raised when a search or matrix size exceeds its configured budget."""

    pass


class ShapeMismatchError(ExcitationStateError):
    """Raised when states, matrices or circuits have incompatible shapes."""

    pass


class PreconditionError(ExcitationStateError):
    """Raised when an operation is called outside its domain."""

    pass


class ConvergenceError(ExcitationStateError):
    """Raised when an iterative solver fails to converge."""

    pass


class ExcitationStateConfigError(ExcitationStateError):
    """Raised when budget configuration is invalid."""

    pass
