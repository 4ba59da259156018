"""Exception hierarchy shared by every fortlib module."""


class FortlibError(Exception):
    """Base class for all library errors."""


class GraphError(FortlibError, ValueError):
    """Malformed graph input: bad endpoint, self-loop, bad dimension."""


class ResourceLimitError(FortlibError):
    """A size guard or candidate budget would be exceeded."""


class ConsistencyError(FortlibError):
    """An internal cross-check disagreed with a computed result.

    Raised when two independent routes to the same quantity disagree, or a
    construction output fails re-verification. Never expected in practice.
    """


class PreconditionError(FortlibError, ValueError):
    """An operation was called on input outside its documented domain."""

    def __init__(self, message, failed=None):
        super().__init__(message)
        self.failed = list(failed or [])


class NotZeroForcingError(PreconditionError):
    """The given set does not force the whole graph; carries the stalled set."""

    def __init__(self, message, final):
        super().__init__(message)
        self.final = final
