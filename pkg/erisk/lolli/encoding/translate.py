"""Programs as terms, memories as linear resources, evaluation as clauses.

``e P N C`` reads "program ``P`` evaluates to ``N``, then ``C`` holds in
the memory left behind".  Each memory cell is a bounded atom ``m L V``;
reading a cell consumes it and puts it back, writing consumes it and
puts back the new value.

Usage::

    term = translate_program(parse_program("1 <- *2"))   # set (v 1) (get (v 2))
    delta = translate_memory(Memory({0: 5}))             # (m 0 5,)
"""

from __future__ import annotations

import functools
from collections.abc import Mapping

from ..imp import Add, Assign, Deref, Gt, Memory, Num, Program, Seq, Sub, While
from ..syntax import Atom, Formula, parse_formula
from ..terms import NAT, O, PROG, Const, Nat, SimpleType, Term, app, arrow, spine

SIGNATURE: dict[str, SimpleType] = {
    "e": arrow(PROG, NAT, O, O),
    "m": arrow(NAT, NAT, O),
    "v": arrow(NAT, PROG),
    "add": arrow(PROG, PROG, PROG),
    "sub": arrow(PROG, PROG, PROG),
    "gt": arrow(PROG, PROG, PROG),
    "get": arrow(PROG, PROG),
    "set": arrow(PROG, PROG, PROG),
    "sq": arrow(PROG, PROG, PROG),
    "wh": arrow(PROG, PROG, PROG),
}

_E2 = "all E1 : prog. all E2 : prog."
_N3 = "all N1 : nat. all N2 : nat. all N3 : nat."

# Labelled clause texts, in the order the engine tries them.
CLAUSE_TEXTS: dict[str, str] = {
    "v": "all N : nat. all C : o. C -o e (v N) N C",
    "add": f"{_E2} {_N3} all C : o. e E1 N1 (e E2 N2 (add3 N1 N2 N3 * C)) -o e (add E1 E2) N3 C",
    "sub": f"{_E2} {_N3} all C : o. e E1 N1 (e E2 N2 (sub3 N1 N2 N3 * C)) -o e (sub E1 E2) N3 C",
    "gtT": f"{_E2} all N1 : nat. all N2 : nat. all C : o. e E1 N1 (e E2 N2 (N1 > N2 * C)) -o e (gt E1 E2) 1 C",
    "gtF": f"{_E2} all N1 : nat. all N2 : nat. all C : o. e E1 N1 (e E2 N2 (N1 <= N2 * C)) -o e (gt E1 E2) 0 C",
    "get": "all E : prog. all N1 : nat. all N2 : nat. all C : o. e E N1 (m N1 N2 * (m N1 N2 -o C)) -o e (get E) N2 C",
    "set": f"{_E2} {_N3} all C : o. e E1 N1 (e E2 N2 (m N1 N3 * (m N1 N2 -o C))) -o e (set E1 E2) N2 C",
    "sq": f"{_E2} all N1 : nat. all N2 : nat. all C : o. e E1 N1 (e E2 N2 C) -o e (sq E1 E2) N2 C",
    # The guard test comes before the body so depth-first search stops on a false guard.
    "whT": f"{_E2} all N1 : nat. all N2 : nat. all C : o. e E1 N1 (N1 > 0 * e E2 N2 (e (wh E1 E2) 0 C)) -o e (wh E1 E2) 0 C",
    "whF": f"{_E2} all N1 : nat. all C : o. e E1 N1 (N1 = 0 * C) -o e (wh E1 E2) 0 C",
}


@functools.lru_cache(maxsize=None)
def _parsed() -> tuple[tuple[str, Formula], ...]:
    return tuple((label, parse_formula(text, SIGNATURE)) for label, text in CLAUSE_TEXTS.items())


def gamma_clauses() -> tuple[Formula, ...]:
    """The unbounded clauses modelling evaluation, one per evaluation rule."""
    return tuple(f for _, f in _parsed())


def clause_labels() -> dict[Formula, str]:
    return {f: label for label, f in _parsed()}


def clause(label: str) -> Formula:
    for name, f in _parsed():
        if name == label:
            return f
    raise KeyError(f"Unknown clause {label!r}. Available: {', '.join(CLAUSE_TEXTS)}")


def constant(name: str) -> Const:
    return Const(name, SIGNATURE[name])


def translate_program(p: Program) -> Term:
    """The ``prog`` term of ``p``."""
    if isinstance(p, Num):
        return app(constant("v"), Nat(p.value))
    if isinstance(p, Deref):
        return app(constant("get"), translate_program(p.address))
    for kind, name in _BINARY:
        if isinstance(p, kind):
            left, right = _children(p)
            return app(constant(name), translate_program(left), translate_program(right))
    raise TypeError(f"not a program: {p!r}")


_BINARY = ((Add, "add"), (Sub, "sub"), (Gt, "gt"), (Assign, "set"), (Seq, "sq"), (While, "wh"))


def _children(p: Program) -> tuple[Program, Program]:
    if isinstance(p, Assign):
        return p.target, p.source
    if isinstance(p, Seq):
        return p.first, p.second
    if isinstance(p, While):
        return p.guard, p.body
    return p.left, p.right  # type: ignore[attr-defined]


def cell(loc: int | Term, value: int | Term) -> Atom:
    loc_t = Nat(loc) if isinstance(loc, int) else loc
    value_t = Nat(value) if isinstance(value, int) else value
    return Atom(app(constant("m"), loc_t, value_t))


def translate_memory(m: Mapping[int, int]) -> tuple[Formula, ...]:
    """One ``m loc value`` atom per cell, by ascending location."""
    return tuple(cell(loc, m[loc]) for loc in sorted(m))


def read_memory(delta: tuple[Formula, ...]) -> Memory:
    """Inverse of :func:`translate_memory` on ground cell atoms."""
    cells: dict[int, int] = {}
    for f in delta:
        h, args = spine(f.term) if isinstance(f, Atom) else (None, [])
        if h != constant("m") or len(args) != 2 or not all(isinstance(a, Nat) for a in args):
            raise ValueError(f"not a ground memory cell: {f!r}")
        cells[args[0].value] = args[1].value  # type: ignore[attr-defined]
    return Memory(cells)
