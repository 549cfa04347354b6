"""Exception hierarchy for lolli.

Expected failures of a run (a stuck program, an unprovable query, an
exhausted budget) are reported as outcome values, not raised.
"""

from __future__ import annotations


class LolliError(Exception):
    """Base exception for all lolli errors."""


class ParseError(LolliError):
    """Text could not be parsed (formulas, terms, proofs, programs, memories)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.line = line
        self.column = column
        self.reason = message
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class TermTypeError(LolliError):
    """A term or substitution is ill-typed."""


class UnboundNameError(TermTypeError):
    """A free name has no declared type."""


class FormulaError(LolliError):
    """A term cannot be read back as a formula."""


class ClassificationError(LolliError):
    """A formula is neither goal-legal nor clause-legal where one is required."""

    def __init__(self, message: str, path: tuple[int, ...] = ()) -> None:
        self.path = path
        where = ".".join(str(k) for k in path) or "root"
        super().__init__(f"{message} (at {where})")


class ProofError(LolliError):
    """A proof tree is structurally malformed."""


class NormalizationError(LolliError):
    """A normalization precondition is not met or a permutation is stuck."""


class UnificationError(LolliError):
    """Base exception for unification outside the supported fragment."""


class OutOfFragmentError(UnificationError):
    """A metavariable occurs in function position."""


class FlexibleGoalError(UnificationError):
    """An atomic goal has a metavariable head."""


class InstantiationError(LolliError):
    """A builtin relation was called with a non-ground argument."""


class EvaluationError(LolliError):
    """A program or memory is malformed."""


class ConfigError(LolliError):
    """Configuration document failed validation."""

    def __init__(self, message: str, errors: list | None = None) -> None:
        self.errors = errors or []
        super().__init__(message)
