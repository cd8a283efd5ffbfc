"""Exception types shared across the package."""

__all__ = [
    "SegEvalError",
    "EmptySequence",
    "ParseError",
    "LengthMismatch",
    "InvalidParameter",
    "DegenerateInput",
    "UnmappedLabel",
    "InvalidSpec",
    "EmptyBatch",
]


class SegEvalError(Exception):
    """Base class for all errors raised by this package."""


class EmptySequence(SegEvalError):
    """Input decodes to a sequence with no labels."""


class ParseError(SegEvalError):
    """Malformed label text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class LengthMismatch(SegEvalError):
    """Two sequences that must be equally long are not."""


class InvalidParameter(SegEvalError):
    """Parameter outside its documented domain (e.g. negative alpha)."""


class DegenerateInput(SegEvalError):
    """Input too small for the requested measure (e.g. fewer than two samples)."""


class UnmappedLabel(SegEvalError):
    """A predicted label has no image under the given state mapping."""


class InvalidSpec(SegEvalError):
    """A synthetic-corruption spec cannot be realised on the given sequence."""


class EmptyBatch(SegEvalError):
    """An aggregate was requested over zero reports."""
