"""Exception hierarchy.

User-facing problems (bad input text, vocabulary caps) derive from
``ValueError``; broken internal invariants derive from ``RuntimeError`` so the
CLI can map them to distinct exit codes.
"""


class ParseError(ValueError):
    """Syntax error in an input text, with 1-based line and column."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


class UnexpectedCharacter(ParseError):
    pass


class UnknownAtom(ValueError):
    pass


class VocabularyMismatch(ValueError):
    pass


class VocabularyTooLarge(ValueError):
    pass


class TooManyDefaults(ValueError):
    pass


class TooManyAtoms(ValueError):
    pass


class NotObjective(ValueError):
    """A formula containing K was supplied where an objective one is required."""


class InvariantViolation(RuntimeError):
    """An internal invariant failed; this indicates a bug, not bad input."""
