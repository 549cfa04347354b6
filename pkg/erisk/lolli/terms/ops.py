"""Operations on terms: shifting, substitution, normalization, typing."""

from __future__ import annotations

from collections.abc import Callable, Mapping

from ..exc import TermTypeError, UnboundNameError
from .term import SUCC, App, Bound, Const, Lam, Meta, Nat, Term, Var
from .types import NAT, O, Arrow, SimpleType


# ── de Bruijn plumbing ───────────────────────────────────────────────


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """Add ``d`` to every index of ``t`` that is free above ``cutoff``."""
    if d == 0:
        return t
    if isinstance(t, Bound):
        return Bound(t.index + d) if t.index >= cutoff else t
    if isinstance(t, App):
        return App(shift(t.fun, d, cutoff), shift(t.arg, d, cutoff))
    if isinstance(t, Lam):
        return Lam(t.hint, t.arg_type, shift(t.body, d, cutoff + 1))
    return t


def instantiate(body: Term, s: Term, depth: int = 0) -> Term:
    """Replace index ``depth`` of ``body`` by ``s``, closing one binder.

    No beta-contraction is performed; call :func:`beta_normalize` when
    ``s`` may create redexes.
    """
    if isinstance(body, Bound):
        if body.index == depth:
            return shift(s, depth)
        if body.index > depth:
            return Bound(body.index - 1)
        return body
    if isinstance(body, App):
        return App(instantiate(body.fun, s, depth), instantiate(body.arg, s, depth))
    if isinstance(body, Lam):
        return Lam(body.hint, body.arg_type, instantiate(body.body, s, depth + 1))
    return body


def has_loose_bound(t: Term, depth: int = 0) -> bool:
    if isinstance(t, Bound):
        return t.index >= depth
    if isinstance(t, App):
        return has_loose_bound(t.fun, depth) or has_loose_bound(t.arg, depth)
    if isinstance(t, Lam):
        return has_loose_bound(t.body, depth + 1)
    return False


def abstract(t: Term, name: str, depth: int = 0) -> Term:
    """Turn free occurrences of the variable or constant ``name`` into an index."""
    if isinstance(t, (Var, Const)) and t.name == name and not getattr(t, "logical", False):
        return Bound(depth)
    if isinstance(t, App):
        return App(abstract(t.fun, name, depth), abstract(t.arg, name, depth))
    if isinstance(t, Lam):
        return Lam(t.hint, t.arg_type, abstract(t.body, name, depth + 1))
    return t


def map_leaves(t: Term, fn: Callable[[Term], Term]) -> Term:
    """Rebuild ``t`` with ``fn`` applied to every Var, Const and Meta leaf."""
    if isinstance(t, App):
        fun = map_leaves(t.fun, fn)
        arg = map_leaves(t.arg, fn)
        if fun is t.fun and arg is t.arg:
            return t
        if fun == SUCC and isinstance(arg, Nat):
            return Nat(arg.value + 1)
        return App(fun, arg)
    if isinstance(t, Lam):
        body = map_leaves(t.body, fn)
        return t if body is t.body else Lam(t.hint, t.arg_type, body)
    if isinstance(t, (Var, Const, Meta)):
        return fn(t)
    return t


# ── Normalization and substitution ───────────────────────────────────


def beta_normalize(t: Term) -> Term:
    """Return the beta-normal form of a well-typed term."""
    if isinstance(t, App):
        fun = beta_normalize(t.fun)
        arg = beta_normalize(t.arg)
        if isinstance(fun, Lam):
            return beta_normalize(instantiate(fun.body, arg))
        if fun == SUCC and isinstance(arg, Nat):
            return Nat(arg.value + 1)
        return App(fun, arg)
    if isinstance(t, Lam):
        return Lam(t.hint, t.arg_type, beta_normalize(t.body))
    if isinstance(t, Const) and t.name == "z":
        return Nat(0)
    return t


def substitute(t: Term, x: Var, s: Term, env: Mapping[str, SimpleType] | None = None) -> Term:
    """Capture-avoiding ``t[s/x]``, normalized.

    Raises TermTypeError when both ``x`` and ``s`` have known types that differ.
    """
    if x.type is not None:
        try:
            actual = infer_type(s, env)
        except UnboundNameError:
            actual = None
        if actual is not None and actual != x.type:
            raise TermTypeError(f"cannot substitute {actual} term for {x.name} : {x.type}")

    def replace(leaf: Term, depth: int) -> Term:
        return shift(s, depth)

    return beta_normalize(_replace_var(t, x.name, replace, 0))


def _replace_var(t: Term, name: str, fn: Callable[[Term, int], Term], depth: int) -> Term:
    if isinstance(t, Var) and t.name == name:
        return fn(t, depth)
    if isinstance(t, App):
        return App(_replace_var(t.fun, name, fn, depth), _replace_var(t.arg, name, fn, depth))
    if isinstance(t, Lam):
        return Lam(t.hint, t.arg_type, _replace_var(t.body, name, fn, depth + 1))
    return t


def alpha_equal(t1: Term, t2: Term) -> bool:
    """Equality modulo bound-variable renaming (and beta)."""
    return beta_normalize(t1) == beta_normalize(t2)


# ── Inspection ───────────────────────────────────────────────────────


def free_names(t: Term) -> set[str]:
    """Names of free variables and nonlogical constants in ``t``."""
    names: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
        elif isinstance(u, Lam):
            stack.append(u.body)
        elif isinstance(u, Var) or (isinstance(u, Const) and not u.logical):
            names.add(u.name)
    return names


def metas(t: Term) -> set[str]:
    found: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
        elif isinstance(u, Lam):
            stack.append(u.body)
        elif isinstance(u, Meta):
            found.add(u.name)
    return found


# ── Typing ───────────────────────────────────────────────────────────

_QUANTIFIERS = frozenset({"all", "ex"})


def infer_type(
    t: Term,
    env: Mapping[str, SimpleType] | None = None,
    context: tuple[SimpleType, ...] = (),
) -> SimpleType:
    """Return the simple type of ``t``.

    Names are looked up in ``env`` first, then in the type the leaf
    carries.  ``context`` holds binder types, innermost first.
    """
    env = env or {}
    if isinstance(t, Nat):
        return NAT
    if isinstance(t, Bound):
        if t.index >= len(context):
            raise TermTypeError(f"loose bound variable #{t.index}")
        return context[t.index]
    if isinstance(t, (Var, Const, Meta)):
        declared = env.get(t.name, t.type)
        if declared is None:
            raise UnboundNameError(f"no type for {t.name!r}")
        return declared
    if isinstance(t, Lam):
        return Arrow(t.arg_type, infer_type(t.body, env, (t.arg_type,) + context))
    if isinstance(t, App):
        if isinstance(t.fun, Const) and t.fun.logical and t.fun.name in _QUANTIFIERS:
            body = infer_type(t.arg, env, context)
            if not (isinstance(body, Arrow) and body.result == O):
                raise TermTypeError(f"quantifier {t.fun.name} expects a predicate, got {body}")
            return O
        fun_type = infer_type(t.fun, env, context)
        arg_type = infer_type(t.arg, env, context)
        if not isinstance(fun_type, Arrow):
            raise TermTypeError(f"ill-typed application: head has non-arrow type {fun_type}")
        if fun_type.arg != arg_type:
            raise TermTypeError(
                f"ill-typed application: expected argument of type {fun_type.arg}, got {arg_type}"
            )
        return fun_type.result
    raise TermTypeError(f"unknown term {t!r}")
