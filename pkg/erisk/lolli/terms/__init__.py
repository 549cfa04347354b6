"""Simply typed lambda-calculus substrate for formulas and object terms."""

from .types import BASE_TYPES, IOTA, NAT, O, PROG, Arrow, BaseType, SimpleType, arrow, base_type
from .term import (
    SUCC, UNSCOPED, ZERO,
    App, Bound, Const, Lam, Meta, Nat, Term, Var,
    app, const, head, spine,
)
from .ops import (
    abstract, alpha_equal, beta_normalize, free_names, has_loose_bound,
    infer_type, instantiate, map_leaves, metas, shift, substitute,
)
from .unify import Bindings, Substitution, unify

__all__ = [
    "BASE_TYPES", "IOTA", "NAT", "O", "PROG", "Arrow", "BaseType", "SimpleType", "arrow", "base_type",
    "SUCC", "UNSCOPED", "ZERO", "App", "Bound", "Const", "Lam", "Meta", "Nat", "Term", "Var",
    "app", "const", "head", "spine",
    "abstract", "alpha_equal", "beta_normalize", "free_names", "has_loose_bound",
    "infer_type", "instantiate", "map_leaves", "metas", "shift", "substitute",
    "Bindings", "Substitution", "unify",
]
