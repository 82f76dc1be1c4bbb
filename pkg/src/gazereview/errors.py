"""Exception hierarchy shared across the package."""


class GazeReviewError(Exception):
    """Base class for all package errors."""


class DomainError(GazeReviewError):
    """A value violates a domain invariant (bad angle range, bad interval, ...)."""


class ParseError(GazeReviewError):
    """A serialized record could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotFoundError(GazeReviewError):
    """A requested stored resource does not exist."""


class CorruptFileError(GazeReviewError):
    """A stored artifact failed its integrity check."""


class ConflictError(GazeReviewError):
    """An optimistic write raced with a newer version."""

    def __init__(self, message, current_version=None):
        super().__init__(message)
        self.current_version = current_version
