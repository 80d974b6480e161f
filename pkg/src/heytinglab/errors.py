"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HeytingLabError(Exception):
    """Base class for all library errors."""


class InputError(HeytingLabError, ValueError):
    """An argument is malformed or belongs to the wrong frame."""


class BoundError(HeytingLabError):
    """A configured combinatorial ceiling would be exceeded."""


class ParseError(HeytingLabError):
    """Syntax error in one of the text formats, with a 1-based position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")


class ScopeError(ParseError):
    """An identifier is used without a binding quantifier or declaration."""


class ResolutionError(HeytingLabError):
    """A term cannot be turned into a name over the given frame."""
