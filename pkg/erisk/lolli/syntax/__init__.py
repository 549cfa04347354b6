"""Lolli formulas: grammar, classification, elaboration and text syntax."""

from .formula import (
    BINARY, LOGICAL, QUANTIFIERS, TOP,
    Atom, Bang, Builtin, BuiltinRel, Exists, Forall, Formula, Imp, Lolli, Oplus, Tensor, Top, With,
    abstract, constants, evaluate_builtin, formula_metas, formula_to_term, instantiate,
    is_rigid, iter_terms, map_terms, nat_value, rename_constant,
    sides, term_to_formula,
)
from .classify import (
    FormulaClass, classify, clause_problem, goal_problem, is_clause, is_goal,
    require_clause, require_goal,
)
from .elaborate import (
    ClauseTriple, ElabStep, MetaSupply, apply_formula, contains, elaborate,
    elaboration_paths, match_triple, unify_formulas,
)
from .parser import format_formula, format_term, parse_formula, parse_term, with_signature

__all__ = [
    "BINARY", "LOGICAL", "QUANTIFIERS", "TOP",
    "Atom", "Bang", "Builtin", "BuiltinRel", "Exists", "Forall", "Formula", "Imp", "Lolli",
    "Oplus", "Tensor", "Top", "With",
    "abstract", "constants", "evaluate_builtin", "formula_metas", "formula_to_term",
    "instantiate", "is_rigid", "iter_terms", "map_terms",
    "nat_value", "rename_constant", "sides", "term_to_formula",
    "FormulaClass", "classify", "clause_problem", "goal_problem", "is_clause", "is_goal",
    "require_clause", "require_goal",
    "ClauseTriple", "ElabStep", "MetaSupply", "apply_formula", "contains", "elaborate",
    "elaboration_paths", "match_triple", "unify_formulas",
    "format_formula", "format_term", "parse_formula", "parse_term", "with_signature",
]
