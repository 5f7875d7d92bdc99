"""Exception types shared across the package."""


class HypergraphError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HypergraphError):
    """Malformed hypergraph text input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidCutError(HypergraphError):
    """A cut side was empty or covered every vertex."""


class OracleLimitError(HypergraphError):
    """An enumeration-based oracle was asked to exceed its size guard."""
