"""Exception hierarchy shared by all tightcore modules."""


class TightcoreError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TightcoreError):
    """An argument is outside the mathematical domain of the operation
    (ring mismatch, division by zero, q not a power of p, ...)."""


class PreconditionError(TightcoreError):
    """A stated hypothesis of the operation does not hold for the input
    (missing ring flags, non-sop ideal, non-tightly-closed input, ...)."""


class ResourceError(TightcoreError):
    """A computation exceeded its configured budget (degree cap hit,
    stability check failed) and was aborted rather than left to run away."""


class NotRegisteredError(TightcoreError):
    """The ring does not match any registered test-ideal pattern and no
    explicit test ideal was supplied."""


class SessionError(TightcoreError):
    """Syntax or reference error in a session file; carries a position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}" if line else message)
        self.line = line
        self.col = col
        self.message = message
