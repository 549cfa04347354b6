"""Goal / clause classification of formulas.

Goals::

    G ::= top | A | G & G | G * G | G + G | P -o G | P => G
        | all x. G | ex x. G | ! G

Clauses::

    P ::= A_r | P & P | G -o P | G => P | all x. P

Builtins are goals only.  Flexible atoms are goals but never clause heads.
"""

from __future__ import annotations

import enum

from ..exc import ClassificationError
from .formula import (
    Atom, Bang, Builtin, Exists, Forall, Formula, Imp, Lolli, Oplus, Tensor, Top, With,
    is_rigid,
)


class FormulaClass(str, enum.Enum):
    GOAL = "goal"
    CLAUSE = "clause"
    BOTH = "both"
    NEITHER = "neither"


Path = tuple[int, ...]


def goal_problem(f: Formula, path: Path = ()) -> tuple[Path, str] | None:
    """Position and reason why ``f`` is not a goal, or None if it is one."""
    if isinstance(f, (Top, Atom, Builtin)):
        return None
    if isinstance(f, (With, Tensor, Oplus)):
        return goal_problem(f.left, path + (0,)) or goal_problem(f.right, path + (1,))
    if isinstance(f, (Lolli, Imp)):
        return clause_problem(f.ante, path + (0,)) or goal_problem(f.cons, path + (1,))
    if isinstance(f, (Forall, Exists, Bang)):
        return goal_problem(f.body, path + (0,))
    return path, f"{type(f).__name__} is not a goal"


def clause_problem(f: Formula, path: Path = ()) -> tuple[Path, str] | None:
    """Position and reason why ``f`` is not a clause, or None if it is one."""
    if isinstance(f, Atom):
        return None if is_rigid(f) else (path, "clause head must be a rigid atom")
    if isinstance(f, With):
        return clause_problem(f.left, path + (0,)) or clause_problem(f.right, path + (1,))
    if isinstance(f, (Lolli, Imp)):
        return goal_problem(f.ante, path + (0,)) or clause_problem(f.cons, path + (1,))
    if isinstance(f, Forall):
        return clause_problem(f.body, path + (0,))
    return path, f"{type(f).__name__} cannot occur in a clause"


def is_goal(f: Formula) -> bool:
    return goal_problem(f) is None


def is_clause(f: Formula) -> bool:
    return clause_problem(f) is None


def classify(f: Formula) -> FormulaClass:
    goal, clause = is_goal(f), is_clause(f)
    if goal and clause:
        return FormulaClass.BOTH
    if goal:
        return FormulaClass.GOAL
    if clause:
        return FormulaClass.CLAUSE
    return FormulaClass.NEITHER


def require_goal(f: Formula) -> Formula:
    problem = goal_problem(f)
    if problem is not None:
        raise ClassificationError(problem[1], problem[0])
    return f


def require_clause(f: Formula) -> Formula:
    problem = clause_problem(f)
    if problem is not None:
        raise ClassificationError(problem[1], problem[0])
    return f
