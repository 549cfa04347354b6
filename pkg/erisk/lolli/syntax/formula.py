"""Lolli formulas and their reification as terms of type ``o``.

Quantifier bodies use de Bruijn indices: inside ``Forall(hint, type,
body)`` the bound variable is ``Bound(0)`` in the terms of ``body``, so
alpha-equivalent formulas compare equal.

Every formula also has a term form built from logical constants
(``tensor``, ``lolli``, ``all`` applied to a lambda, ...).  Continuation
arguments are such terms, and :func:`term_to_formula` reads them back.
"""

from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import dataclass, field

from ..exc import FormulaError
from ..terms import (
    NAT, O, App, Bound, Const, Lam, Nat, SimpleType, Term,
    abstract as abstract_term, arrow, beta_normalize, free_names,
    instantiate as instantiate_term, map_leaves, metas, shift, spine,
)


class Formula:
    """Base class for formulas."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    term: Term


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bang(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class With(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Lolli(Formula):
    ante: Formula
    cons: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    ante: Formula
    cons: Formula


@dataclass(frozen=True, slots=True)
class Tensor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Oplus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    hint: str = field(compare=False)
    type: SimpleType
    body: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    hint: str = field(compare=False)
    type: SimpleType
    body: Formula


class BuiltinRel(str, enum.Enum):
    """Arithmetic relations decided by evaluation, never by clauses."""

    EQ = "="
    NEQ = "<>"
    GT = ">"
    LE = "<="
    ADD3 = "add3"
    SUB3 = "sub3"

    @property
    def arity(self) -> int:
        return 3 if self in (BuiltinRel.ADD3, BuiltinRel.SUB3) else 2


@dataclass(frozen=True, slots=True)
class Builtin(Formula):
    rel: BuiltinRel
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.rel.arity:
            raise FormulaError(f"{self.rel.value} takes {self.rel.arity} arguments, got {len(self.args)}")


TOP = Top()

BINARY = (With, Lolli, Imp, Tensor, Oplus)
QUANTIFIERS = (Forall, Exists)


def evaluate_builtin(rel: BuiltinRel, values: tuple[int, ...]) -> bool:
    """Decide a builtin relation on natural numbers."""
    if rel is BuiltinRel.EQ:
        return values[0] == values[1]
    if rel is BuiltinRel.NEQ:
        return values[0] != values[1]
    if rel is BuiltinRel.GT:
        return values[0] > values[1]
    if rel is BuiltinRel.LE:
        return values[0] <= values[1]
    if rel is BuiltinRel.ADD3:
        return values[0] + values[1] == values[2]
    return max(0, values[0] - values[1]) == values[2]


# ── Logical constants ────────────────────────────────────────────────

_OOO = arrow(O, O, O)
_NNO = arrow(NAT, NAT, O)
_NNNO = arrow(NAT, NAT, NAT, O)

LOGICAL: dict[str, Const] = {
    "top": Const("top", O, True),
    "bang": Const("bang", arrow(O, O), True),
    "with": Const("with", _OOO, True),
    "lolli": Const("lolli", _OOO, True),
    "imp": Const("imp", _OOO, True),
    "tensor": Const("tensor", _OOO, True),
    "oplus": Const("oplus", _OOO, True),
    "all": Const("all", None, True),
    "ex": Const("ex", None, True),
}
for _rel in BuiltinRel:
    LOGICAL[_rel.value] = Const(_rel.value, _NNNO if _rel.arity == 3 else _NNO, True)

_BINARY_NAMES: dict[type, str] = {
    With: "with", Lolli: "lolli", Imp: "imp", Tensor: "tensor", Oplus: "oplus",
}
_BINARY_CLASSES = {name: cls for cls, name in _BINARY_NAMES.items()}


def logical_const(name: str) -> Const:
    return LOGICAL[name]


def is_rigid(atom: Atom) -> bool:
    h, _ = spine(atom.term)
    return isinstance(h, Const) and not h.logical


# ── Term <-> formula ─────────────────────────────────────────────────


def formula_to_term(f: Formula) -> Term:
    """Reify a formula as a term of type ``o``."""
    if isinstance(f, Atom):
        return f.term
    if isinstance(f, Top):
        return LOGICAL["top"]
    if isinstance(f, Bang):
        return App(LOGICAL["bang"], formula_to_term(f.body))
    if isinstance(f, BINARY):
        op = LOGICAL[_BINARY_NAMES[type(f)]]
        left, right = sides(f)
        return App(App(op, formula_to_term(left)), formula_to_term(right))
    if isinstance(f, QUANTIFIERS):
        q = LOGICAL["all" if isinstance(f, Forall) else "ex"]
        return App(q, Lam(f.hint, f.type, formula_to_term(f.body)))
    if isinstance(f, Builtin):
        t: Term = LOGICAL[f.rel.value]
        for a in f.args:
            t = App(t, a)
        return t
    raise FormulaError(f"unknown formula {f!r}")


def term_to_formula(t: Term) -> Formula:
    """Read a term of type ``o`` back as a formula.

    Terms whose head is not a logical constant become atoms.
    """
    h, args = spine(t)
    if not (isinstance(h, Const) and h.logical):
        return Atom(t)
    name = h.name
    if name == "top":
        _expect(name, args, 0)
        return TOP
    if name == "bang":
        _expect(name, args, 1)
        return Bang(term_to_formula(args[0]))
    if name in _BINARY_CLASSES:
        _expect(name, args, 2)
        return _BINARY_CLASSES[name](term_to_formula(args[0]), term_to_formula(args[1]))
    if name in ("all", "ex"):
        _expect(name, args, 1)
        pred = args[0]
        if not isinstance(pred, Lam):
            pred = _eta_expand(pred, name)
        cls = Forall if name == "all" else Exists
        return cls(pred.hint, pred.arg_type, term_to_formula(pred.body))
    rel = BuiltinRel(name)
    _expect(name, args, rel.arity)
    return Builtin(rel, tuple(args))


def _expect(name: str, args: list[Term], n: int) -> None:
    if len(args) != n:
        raise FormulaError(f"logical constant {name!r} applied to {len(args)} arguments, expected {n}")


def _eta_expand(pred: Term, name: str) -> Lam:
    ty = getattr(pred, "type", None)
    if ty is None or not hasattr(ty, "arg"):
        raise FormulaError(f"quantifier {name!r} applied to a non-lambda of unknown type")
    return Lam("x", ty.arg, App(shift(pred, 1), Bound(0)))


def sides(f: Formula) -> tuple[Formula, Formula]:
    """The two immediate subformulas of a binary connective."""
    if isinstance(f, (Lolli, Imp)):
        return f.ante, f.cons
    return f.left, f.right  # type: ignore[attr-defined]


# ── Traversals ───────────────────────────────────────────────────────


def map_terms(f: Formula, fn: Callable[[Term, int], Term], depth: int = 0) -> Formula:
    """Rebuild ``f`` applying ``fn(term, binder_depth)`` to every term.

    Atoms are re-read after rewriting, so an atom whose term becomes a
    logical formula turns into that formula.
    """
    if isinstance(f, Atom):
        new = fn(f.term, depth)
        if new is f.term:
            return f
        return term_to_formula(beta_normalize(new))
    if isinstance(f, Builtin):
        return Builtin(f.rel, tuple(fn(a, depth) for a in f.args))
    if isinstance(f, Top):
        return f
    if isinstance(f, Bang):
        return Bang(map_terms(f.body, fn, depth))
    if isinstance(f, BINARY):
        left, right = sides(f)
        return type(f)(map_terms(left, fn, depth), map_terms(right, fn, depth))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.hint, f.type, map_terms(f.body, fn, depth + 1))
    raise FormulaError(f"unknown formula {f!r}")


def iter_terms(f: Formula):
    """Yield ``(term, binder_depth)`` for every term in ``f``."""
    stack: list[tuple[Formula, int]] = [(f, 0)]
    while stack:
        g, depth = stack.pop()
        if isinstance(g, Atom):
            yield g.term, depth
        elif isinstance(g, Builtin):
            for a in g.args:
                yield a, depth
        elif isinstance(g, Bang):
            stack.append((g.body, depth))
        elif isinstance(g, BINARY):
            left, right = sides(g)
            stack.append((right, depth))
            stack.append((left, depth))
        elif isinstance(g, QUANTIFIERS):
            stack.append((g.body, depth + 1))


def instantiate(body: Formula, t: Term) -> Formula:
    """Open a quantifier body with ``t`` for its bound variable."""
    return map_terms(body, lambda term, depth: instantiate_term(term, t, depth))


def abstract(f: Formula, name: str) -> Formula:
    """Turn free occurrences of ``name`` into the index of a new binder."""
    return map_terms(f, lambda term, depth: abstract_term(term, name, depth))


def rename_constant(f: Formula, old: str, new: Term) -> Formula:
    """Replace the nonlogical constant ``old`` by ``new`` everywhere in ``f``."""
    def swap(leaf: Term) -> Term:
        return new if isinstance(leaf, Const) and not leaf.logical and leaf.name == old else leaf

    return map_terms(f, lambda term, depth: map_leaves(term, swap))


def constants(f: Formula) -> set[str]:
    """Names of nonlogical constants and free variables occurring in ``f``."""
    names: set[str] = set()
    for term, _ in iter_terms(f):
        names |= free_names(term)
    return names


def formula_metas(f: Formula) -> set[str]:
    found: set[str] = set()
    for term, _ in iter_terms(f):
        found |= metas(term)
    return found


def nat_value(t: Term) -> int | None:
    """The value of a ground numeral, else None."""
    return t.value if isinstance(t, Nat) else None
