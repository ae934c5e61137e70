"""Exception hierarchy shared by the library and the CLI."""


class RepShiftError(Exception):
    """Base class; ``kind`` is the machine-readable tag used by the CLI."""

    kind = "error"


class ConfigurationError(RepShiftError):
    kind = "configuration"


class DomainError(RepShiftError, ValueError):
    kind = "domain"


class ResourceError(RepShiftError):
    kind = "resource"


class InvariantViolation(RepShiftError, AssertionError):
    kind = "invariant"


class PresentationSyntaxError(RepShiftError):
    kind = "parse"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
