"""Text syntax for formulas and terms: an LALR grammar and a printer.

Grammar, loosest to tightest::

    all x : T. F    ex x : T. F    \\x : T. t        binders, body extends right
    F -o F    F => F                                  right-assoc
    F + F                                             right-assoc
    F & F                                             right-assoc
    F * F                                             right-assoc
    ! F
    f a1 ... an    a > b    a <= b    a = b    a <> b    top

Arguments are names, ``?X`` metavariables, numerals (``z`` and ``s``
are accepted too) and parenthesised formulas or lambdas.  ``add3 a b c``
and ``sub3 a b c`` are the arithmetic builtins.  Every bare name is a
constant unless a binder captures it; ``all``, ``ex`` and ``top`` are
reserved.  Types are ``o``, ``i``, ``nat``, ``prog`` and ``T -> T``.

Usage::

    f = parse_formula("all x : i. p x -o q x")
    format_formula(f)      # 'all x : i. p x -o q x'
"""

from __future__ import annotations

import functools
from collections.abc import Mapping

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from ..exc import FormulaError, LolliError, ParseError
from ..terms import (
    IOTA, SUCC, App, Bound, Const, Lam, Meta, Nat, SimpleType, Term, Var,
    abstract as abstract_term, app, arrow, base_type, free_names, map_leaves, spine,
)
from .formula import (
    LOGICAL, Atom, Bang, Builtin, BuiltinRel, Exists, Forall, Formula, Imp, Lolli, Oplus,
    Tensor, Top, With, abstract, constants, formula_to_term, map_terms, term_to_formula,
)

FORMULA_RULES = r"""
?formula: binder

?binder: "all" NAME ":" type "." binder      -> forall
       | "ex" NAME ":" type "." binder       -> exists
       | "\\" NAME [":" type] "." binder     -> lam
       | impl

?impl: plus "-o" binder                      -> lolli
     | plus "=>" binder                      -> imp
     | plus

?plus: conj "+" plus                         -> oplus
     | conj

?conj: tens "&" conj                         -> with_
     | tens

?tens: prefix "*" tens                       -> tensor
     | prefix

?prefix: "!" prefix                          -> bang
       | atom

?atom: arg+                                  -> application
     | arg ">" arg                           -> gt
     | arg "<=" arg                          -> le
     | arg "=" arg                           -> eq
     | arg "<>" arg                          -> neq

?arg: NAME                                   -> name
    | META                                   -> meta
    | INT                                    -> nat
    | "top"                                  -> top
    | "(" formula ")"

?type: tatom "->" type                       -> arrow
     | tatom

?tatom: NAME                                 -> base
      | "(" type ")"

NAME: /[A-Za-z_][A-Za-z0-9_']*/
META: /\?[A-Za-z0-9_']+/

%import common.INT
%import common.WS
%import common.SH_COMMENT
%ignore WS
%ignore SH_COMMENT
"""

RESERVED = frozenset({"all", "ex", "top"})


def as_term(item: Term | Formula) -> Term:
    return formula_to_term(item) if isinstance(item, Formula) else item


def as_formula(item: Term | Formula) -> Formula:
    return item if isinstance(item, Formula) else term_to_formula(item)


@v_args(inline=True)
class FormulaBuilder(Transformer):
    """Builds formulas and terms while the LALR parser reduces."""

    # ── Leaves ─────────────────────────────────────────────────────

    def name(self, tok: Token) -> Term:
        text = str(tok)
        if text in (BuiltinRel.ADD3.value, BuiltinRel.SUB3.value):
            return LOGICAL[text]
        if text == "z":
            return Nat(0)
        if text == "s":
            return SUCC
        return Const(text)

    def meta(self, tok: Token) -> Term:
        return Meta(str(tok)[1:])

    def nat(self, tok: Token) -> Term:
        return Nat(int(tok))

    def top(self) -> Formula:
        return Top()

    # ── Types ──────────────────────────────────────────────────────

    def base(self, tok: Token) -> SimpleType:
        return base_type(str(tok))

    def arrow(self, arg: SimpleType, result: SimpleType) -> SimpleType:
        return arrow(arg, result)

    # ── Atoms ──────────────────────────────────────────────────────

    def application(self, *items: Term | Formula) -> Term | Formula:
        if len(items) == 1:
            item = items[0]
            return item if isinstance(item, (Formula, Lam)) else as_formula(item)
        head = as_term(items[0])
        return as_formula(app(head, *(as_term(i) for i in items[1:])))

    def _relation(self, rel: BuiltinRel, a: Term | Formula, b: Term | Formula) -> Formula:
        return Builtin(rel, (as_term(a), as_term(b)))

    def gt(self, a, b):
        return self._relation(BuiltinRel.GT, a, b)

    def le(self, a, b):
        return self._relation(BuiltinRel.LE, a, b)

    def eq(self, a, b):
        return self._relation(BuiltinRel.EQ, a, b)

    def neq(self, a, b):
        return self._relation(BuiltinRel.NEQ, a, b)

    # ── Connectives ────────────────────────────────────────────────

    def bang(self, body):
        return Bang(as_formula(body))

    def tensor(self, left, right):
        return Tensor(as_formula(left), as_formula(right))

    def with_(self, left, right):
        return With(as_formula(left), as_formula(right))

    def oplus(self, left, right):
        return Oplus(as_formula(left), as_formula(right))

    def lolli(self, ante, cons):
        return Lolli(as_formula(ante), as_formula(cons))

    def imp(self, ante, cons):
        return Imp(as_formula(ante), as_formula(cons))

    # ── Binders ────────────────────────────────────────────────────

    def forall(self, tok: Token, type: SimpleType, body) -> Formula:
        return Forall(str(tok), type, abstract(as_formula(body), str(tok)))

    def exists(self, tok: Token, type: SimpleType, body) -> Formula:
        return Exists(str(tok), type, abstract(as_formula(body), str(tok)))

    def lam(self, tok: Token, type: SimpleType | None, body) -> Term:
        return Lam(str(tok), type or IOTA, abstract_term(as_term(body), str(tok)))


@functools.lru_cache(maxsize=None)
def _formula_parser() -> Lark:
    return Lark(FORMULA_RULES, start="formula", parser="lalr", transformer=FormulaBuilder())


def run_parser(parser: Lark, text: str, start: str | None = None):
    """Run a lark parser, translating its errors into :class:`ParseError`."""
    try:
        return parser.parse(text, start=start) if start else parser.parse(text)
    except UnexpectedInput as exc:
        raise ParseError(_describe(exc), exc.line, exc.column) from exc
    except VisitError as exc:
        raise ParseError(str(exc.orig_exc)) from exc
    except FormulaError as exc:
        raise ParseError(str(exc)) from exc


def _describe(exc: UnexpectedInput) -> str:
    token = getattr(exc, "token", None)
    if token is not None:
        if token.type == "$END":
            return "unexpected end of input"
        return f"unexpected {str(token)!r}"
    char = getattr(exc, "char", None)
    if char is not None:
        return f"unexpected character {char!r}"
    return "syntax error"


def with_signature(f: Formula, signature: Mapping[str, SimpleType] | None) -> Formula:
    """Attach declared types to the constants of ``f``."""
    if not signature:
        return f

    def typed(leaf: Term) -> Term:
        if isinstance(leaf, Const) and not leaf.logical and leaf.name in signature:
            return Const(leaf.name, signature[leaf.name])
        return leaf

    return map_terms(f, lambda term, depth: map_leaves(term, typed))


def parse_formula(text: str, signature: Mapping[str, SimpleType] | None = None) -> Formula:
    result = run_parser(_formula_parser(), text)
    if isinstance(result, Lam):
        raise ParseError("expected a formula, got a lambda term")
    return with_signature(as_formula(result), signature)


def parse_term(text: str, signature: Mapping[str, SimpleType] | None = None) -> Term:
    result = run_parser(_formula_parser(), text)
    term = as_term(result)
    if signature:
        term = map_leaves(
            term,
            lambda leaf: Const(leaf.name, signature[leaf.name])
            if isinstance(leaf, Const) and not leaf.logical and leaf.name in signature
            else leaf,
        )
    return term


# ── Printing ─────────────────────────────────────────────────────────

_BINDER, _IMPL, _PLUS, _CONJ, _TENS, _PREFIX, _ATOM = range(7)

_INFIX = {
    Lolli: ("-o", _IMPL, _PLUS, _BINDER),
    Imp: ("=>", _IMPL, _PLUS, _BINDER),
    Oplus: ("+", _PLUS, _CONJ, _PLUS),
    With: ("&", _CONJ, _TENS, _CONJ),
    Tensor: ("*", _TENS, _PREFIX, _TENS),
}


def _fresh_name(hint: str, avoid: set[str]) -> str:
    name = hint or "x"
    while name in avoid or name in RESERVED:
        name += "'"
    return name


def _wrap(text: str, level: int, required: int) -> str:
    return f"({text})" if level < required else text


def format_formula(f: Formula, names: tuple[str, ...] = ()) -> str:
    return _fmt(f, names)[0]


def _fmt(f: Formula, names: tuple[str, ...]) -> tuple[str, int]:
    if isinstance(f, Atom):
        return _term(f.term, names, False), _ATOM
    if isinstance(f, Top):
        return "top", _ATOM
    if isinstance(f, Builtin):
        args = [_term(a, names, True) for a in f.args]
        if f.rel.arity == 3:
            return f"{f.rel.value} {' '.join(args)}", _ATOM
        return f"{args[0]} {f.rel.value} {args[1]}", _ATOM
    if isinstance(f, Bang):
        text, level = _fmt(f.body, names)
        return "!" + _wrap(text, level, _PREFIX), _PREFIX
    if type(f) in _INFIX:
        op, level, left_req, right_req = _INFIX[type(f)]
        left, right = (f.ante, f.cons) if isinstance(f, (Lolli, Imp)) else (f.left, f.right)
        lt, ll = _fmt(left, names)
        rt, rl = _fmt(right, names)
        return f"{_wrap(lt, ll, left_req)} {op} {_wrap(rt, rl, right_req)}", level
    if isinstance(f, (Forall, Exists)):
        keyword = "all" if isinstance(f, Forall) else "ex"
        name = _fresh_name(f.hint, constants(f.body) | set(names))
        body, _ = _fmt(f.body, (name,) + names)
        return f"{keyword} {name} : {_type(f.type)}. {body}", _BINDER
    raise FormulaError(f"cannot print {f!r}")


def _type(t: SimpleType) -> str:
    return str(t)


def format_term(t: Term, names: tuple[str, ...] = ()) -> str:
    return _term(t, names, False)


def _term(t: Term, names: tuple[str, ...], as_arg: bool) -> str:
    if isinstance(t, Nat):
        return str(t.value)
    if isinstance(t, Bound):
        return names[t.index] if t.index < len(names) else f"#{t.index}"
    if isinstance(t, Meta):
        return f"?{t.name}"
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, Lam):
        name = _fresh_name(t.hint, free_names(t.body) | set(names))
        text = f"\\{name} : {_type(t.arg_type)}. {_term(t.body, (name,) + names, False)}"
        return f"({text})" if as_arg else text
    h, args = spine(t)
    if isinstance(h, Const) and h.logical:
        try:
            text, level = _fmt(term_to_formula(t), names)
        except LolliError:
            text, level = _application(h, args, names), _ATOM
        return f"({text})" if as_arg or level < _ATOM else text
    text = _application(h, args, names)
    return f"({text})" if as_arg else text


def _application(h: Term, args: list[Term], names: tuple[str, ...]) -> str:
    parts = [_term(h, names, True)]
    parts.extend(_term(a, names, True) for a in args)
    return " ".join(parts)


__all__ = [
    "FORMULA_RULES", "FormulaBuilder", "RESERVED",
    "as_formula", "as_term", "format_formula", "format_term",
    "parse_formula", "parse_term", "run_parser", "with_signature",
]
