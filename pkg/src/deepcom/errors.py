"""Exception hierarchy shared by every part of the package."""


class DeepComError(Exception):
    """Base class for all errors raised by deepcom."""


class NotAGroup(DeepComError):
    pass


class CapExceeded(DeepComError):
    """An input is larger than a configured size cap."""


class BadParameter(DeepComError):
    pass


class ParseError(DeepComError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at offset {position}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class FileError(DeepComError):
    pass


class BadExtension(DeepComError):
    """Kernel is not central, or the projection is not a surjective homomorphism."""


class BaseMismatch(DeepComError):
    pass


class NotCommuting(DeepComError):
    pass


class NotACocycle(DeepComError):
    pass


class InternalVerificationFailure(DeepComError):
    """A computed object failed its exact post-check. Always a bug."""


class TheoremViolation(DeepComError):
    """A theorem cross-check failed. Always a bug."""
