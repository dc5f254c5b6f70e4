"""Exception hierarchy shared by the library and the CLI."""


class C4StarError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(C4StarError, ValueError):
    """Parameters outside the range where an operation is defined."""


class CapabilityError(C4StarError):
    """Request exceeds what the exact routines are built to handle."""


class UnsupportedParameterError(DomainError):
    """Parameters are in range but the construction degenerates there."""


class IndeterminateError(C4StarError):
    """A search hit its budget, so no verdict can be given."""


class Graph6ParseError(C4StarError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
