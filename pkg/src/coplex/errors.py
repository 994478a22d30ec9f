"""Exception types shared across the package."""


class CoplexError(Exception):
    """Base class for all errors raised by coplex."""


class GraphParseError(CoplexError, ValueError):
    """Raised when an instance file is malformed.

    ``line`` carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceTooLarge(CoplexError, ValueError):
    """An exhaustive routine was asked to run beyond its configured cap."""


class PreconditionError(CoplexError, ValueError):
    """A structural precondition on the input does not hold."""


class LPError(CoplexError, RuntimeError):
    """The LP backend failed to produce an answer."""
