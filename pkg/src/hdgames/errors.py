"""Exception hierarchy shared by the parsers, validators and solvers."""


class HDGamesError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HDGamesError, ValueError):
    """A text file does not follow its line-based grammar."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(HDGamesError, ValueError):
    """A structurally well-formed value violates an invariant or precondition."""


class ResourceLimitError(HDGamesError, RuntimeError):
    """A brute-force procedure would exceed its configured bound."""
