"""
Error types raised by the shift toolkit.

Every error derives from ShiftError so callers (the command line in
particular) can catch the whole family. Errors caused by bad caller input
also derive from ValueError.
"""

from typing import Optional


class ShiftError(Exception):
    """Base class for all toolkit errors."""


class SetSpecError(ShiftError, ValueError):
    """A set description violates its invariants (ordering, positivity, bound)."""


class BoundBreached(ShiftError, ValueError):
    """A bounded explicit set was queried beyond its declared bound."""


class IndexBeyondSet(ShiftError, ValueError):
    """nth_element was asked for an index the set does not have."""


class UnknownMembership(ShiftError):
    """A verdict depends on membership beyond a bounded set's bound."""


class InfinitudeUnknown(ShiftError):
    """Whether a bounded explicit set is infinite cannot be decided."""


class VariantMismatch(ShiftError):
    """The operation is defined for the other shift variant only."""


class WordNotInLanguage(ShiftError, ValueError):
    """A word argument does not occur in any point of the shift."""


class EnumerationCapExceeded(ShiftError, ValueError):
    """An explicit enumeration was requested beyond the configured cap."""


class NotSFT(ShiftError):
    """The shift is not (or not provably) of finite type."""


class NotSofic(ShiftError):
    """The shift is not (or not provably) sofic."""


class EmptyGraph(ShiftError):
    """A graph presentation has no states left to work with."""


class AlphabetSizeMismatch(ShiftError, ValueError):
    """Two shifts that must share an alphabet size do not."""


class InvalidOffsets(ShiftError, ValueError):
    """An offset vector does not relate the two shifts' sets."""


class WordTooShort(ShiftError, ValueError):
    """A word is not longer than the block map's memory plus anticipation."""


class BlockMapError(ShiftError, ValueError):
    """A block map description is malformed or undefined on a window."""


class ParseError(ShiftError, ValueError):
    """Spec text is not well formed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f"line {line}" if line is not None else "input"
        if column is not None:
            where += f", column {column}"
        super().__init__(f"{where}: {message}")


class SemanticError(ShiftError, ValueError):
    """Spec text parses but describes an invalid shift."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
