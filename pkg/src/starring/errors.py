class StarRingError(Exception):
    """Base class for every error raised by this package."""


class DescriptorError(StarRingError, ValueError):
    """A ring descriptor is malformed or names an illegal ring."""


class RingMismatchError(StarRingError, ValueError):
    """Operands belong to different rings."""


class UnsupportedError(StarRingError):
    """The operation is not defined for this backend (e.g. enumerating an infinite ring)."""


class ResourceError(StarRingError):
    """A finite scan would exceed the configured enumeration cap."""


class PreconditionError(StarRingError, ValueError):
    """A caller-supplied witness does not satisfy the equation it claims to."""


class ParseError(StarRingError, ValueError):
    def __init__(self, message: str, position: str | int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class VerificationFailure(StarRingError, AssertionError):
    """An internally produced inverse failed its defining equations."""
