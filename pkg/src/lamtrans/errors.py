"""Shared exception types."""


class ParseError(ValueError):
    """Malformed textual input, with optional line/column position."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None and column is not None:
            where = f"line {line}, column {column}: "
        elif line is not None:
            where = f"line {line}: "
        elif column is not None:
            where = f"column {column}: "
        super().__init__(where + message)


class CapExceeded(RuntimeError):
    """A configured work budget or enumeration cap was exhausted."""
