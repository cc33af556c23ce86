"""Exception hierarchy shared across the library."""


class CentnetError(Exception):
    """Base class for all library errors."""


class GraphInputError(CentnetError):
    """Malformed graph input: bad edge, bad weight, unparseable line."""


class UnsupportedGraphError(CentnetError):
    """Metric applied to a graph kind it is not defined for."""


class ConvergenceError(CentnetError):
    """Fixed-point iteration exhausted its iteration budget."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SingularMatrixError(CentnetError):
    """Linear system singular to working precision."""

    def __init__(self, message, pivot=None):
        super().__init__(message)
        self.pivot = pivot


class SizeCapError(CentnetError):
    """Input exceeds the configured size cap of an expensive solver."""
