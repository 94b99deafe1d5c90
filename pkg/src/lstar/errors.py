"""Exception hierarchy.

Typing failures are :class:`TypeCheckError` subclasses; each carries the
offending subterm and, when it came from a source file, a ``line``.
"""

from __future__ import annotations


class LstarError(Exception):
    """Base class for every error raised by the package."""


class ParseError(LstarError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class MalformedInput(LstarError):
    """A translation met a node outside its input fragment."""

    def __init__(self, message: str, term=None):
        super().__init__(message)
        self.term = term


class TypeCheckError(LstarError):
    kind = "TypeError"

    def __init__(self, message: str, term=None, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.term = term
        self.line = line

    def __str__(self):
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{where}{self.kind}: {self.message}"


class UnboundVariable(TypeCheckError):
    kind = "UnboundVariable"


class NotAFunction(TypeCheckError):
    kind = "NotAFunction"


class NotAPair(TypeCheckError):
    kind = "NotAPair"


class NotASort(TypeCheckError):
    kind = "NotASort"


class CannotInfer(TypeCheckError):
    kind = "CannotInfer"


class IllFormedContext(TypeCheckError):
    kind = "IllFormedContext"


class NotAUContext(TypeCheckError):
    kind = "NotAUContext"


class Mismatch(TypeCheckError):
    kind = "Mismatch"

    def __init__(self, message: str, term=None, expected=None, got=None, line: int | None = None):
        super().__init__(message, term, line)
        self.expected = expected
        self.got = got
