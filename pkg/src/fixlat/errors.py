"""Exception types shared across the package."""


class FixlatError(Exception):
    """Base class for all package errors."""


class ValidationError(FixlatError, ValueError):
    """Malformed input: not a bijection, wrong degree, bad file, non-prime field."""


class PreconditionError(FixlatError, ValueError):
    """A documented precondition of an operation does not hold for the input."""


class CapacityError(FixlatError, RuntimeError):
    """A configured size cap was exceeded.

    Carries the name of the violated cap and, where meaningful, the partial
    count reached before giving up. Caps fail loudly, never truncate silently.
    """

    def __init__(self, message, cap_name=None, partial=None):
        super().__init__(message)
        self.cap_name = cap_name
        self.partial = partial


class InternalConsistencyError(FixlatError, RuntimeError):
    """A constructed object failed its own verification step."""
