"""Exception hierarchy shared across the package."""

from __future__ import annotations


class UnitOCError(Exception):
    """Base class for every error raised by this package."""


class PosetError(UnitOCError, ValueError):
    """The input relation is not a strict partial order, or names are bad."""


class IntervalError(UnitOCError, ValueError):
    """An interval or representation violates its invariants."""


class TwinError(UnitOCError, ValueError):
    """A twin-free routine was handed a poset that has twins."""


class OracleBoundError(UnitOCError, ValueError):
    """A brute-force routine was asked to search beyond its size bound."""


class InternalError(UnitOCError, RuntimeError):
    """A state that the underlying theory rules out; always a bug."""


class ParseError(UnitOCError, ValueError):
    """Malformed input text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
