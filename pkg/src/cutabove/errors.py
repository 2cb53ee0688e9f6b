"""Shared exception types."""


class GraphFormatError(ValueError):
    """Raised when a graph file does not follow the expected text format."""


class StaleApplicationError(ValueError):
    """Raised when a rule application no longer matches the graph it is applied to."""


class InvariantViolation(RuntimeError):
    """Raised when an internal guarantee fails; always indicates a bug."""
