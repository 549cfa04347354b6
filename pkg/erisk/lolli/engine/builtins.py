"""Arithmetic builtins on ground naturals.

``add3 a b c`` and ``sub3 a b c`` may leave ``c`` open; it is then bound
to the computed value.  Subtraction is monus.
"""

from __future__ import annotations

from ..exc import InstantiationError
from ..syntax import Builtin, BuiltinRel, evaluate_builtin, format_formula
from ..terms import Bindings, Nat, Substitution, Term

_COMPUTED = (BuiltinRel.ADD3, BuiltinRel.SUB3)


def _ground(t: Term, b: Builtin) -> int:
    if not isinstance(t, Nat):
        raise InstantiationError(f"builtin {format_formula(b)} needs ground numerals, got {t!r}")
    return t.value


def decide_builtin(b: Builtin, store: Bindings) -> bool:
    """Decide ``b`` under ``store``, binding a computed third argument in place."""
    args = tuple(store.apply(a) for a in b.args)
    if b.rel in _COMPUTED:
        x, y = _ground(args[0], b), _ground(args[1], b)
        value = x + y if b.rel is BuiltinRel.ADD3 else max(0, x - y)
        if isinstance(args[2], Nat):
            return args[2].value == value
        return store.unify(args[2], Nat(value))
    values = tuple(_ground(a, b) for a in args)
    return evaluate_builtin(b.rel, values)


def solve_builtin(b: Builtin, s: Substitution | None = None) -> Substitution | None:
    """Substitution extending ``s`` under which ``b`` holds, or None."""
    store = s.bindings() if s is not None else Bindings()
    if not decide_builtin(b, store):
        return None
    return store.snapshot()

