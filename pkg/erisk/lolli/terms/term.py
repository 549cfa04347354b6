"""Simply typed lambda terms in locally nameless form.

Bound variables are de Bruijn indices (``Bound``), so alpha-equivalent
terms are structurally equal.  Binder names survive only as printing
hints and never take part in equality.

Usage::

    from lolli.terms import Const, Lam, Bound, app, NAT, arrow

    m = Const("m", arrow(NAT, NAT, O))
    t = app(m, Nat(0), Nat(5))
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .types import NAT, SimpleType, arrow

# Metas built without a scope may be bound to any eigenvariable.
UNSCOPED = 1 << 62


class Term:
    """Base class for terms."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    """A free variable, identified by name."""

    name: str
    type: SimpleType | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Const(Term):
    """A constant.  ``scope`` is set only on eigenvariables."""

    name: str
    type: SimpleType | None = field(default=None, compare=False)
    logical: bool = field(default=False, compare=False)
    scope: int | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Meta(Term):
    """A logic (unification) variable."""

    name: str
    type: SimpleType | None = field(default=None, compare=False)
    scope: int = field(default=UNSCOPED, compare=False)


@dataclass(frozen=True, slots=True)
class Bound(Term):
    """A de Bruijn index, 0 being the nearest enclosing binder."""

    index: int


@dataclass(frozen=True, slots=True)
class Nat(Term):
    """A natural number literal; ``z`` and ``s`` fold into these."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"Nat literal must be non-negative, got {self.value}")


@dataclass(frozen=True, slots=True)
class Lam(Term):
    hint: str = field(compare=False)
    arg_type: SimpleType
    body: Term


@dataclass(frozen=True, slots=True)
class App(Term):
    fun: Term
    arg: Term


ZERO = Nat(0)
SUCC = Const("s", arrow(NAT, NAT))


def const(name: str, type: SimpleType | None = None) -> Term:
    """Build a nonlogical constant, folding ``z`` into ``Nat(0)``."""
    if name == "z":
        return ZERO
    if name == "s":
        return SUCC
    return Const(name, type)


def app(fun: Term, *args: Term) -> Term:
    """Apply ``fun`` to ``args``, contracting head redexes and folding ``s n``."""
    from .ops import beta_normalize, instantiate

    result = fun
    for arg in args:
        if isinstance(result, Lam):
            result = beta_normalize(instantiate(result.body, arg))
        elif result == SUCC and isinstance(arg, Nat):
            result = Nat(arg.value + 1)
        else:
            result = App(result, arg)
    return result


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``f a1 ... an`` into ``(f, [a1, ..., an])``."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def head(t: Term) -> Term:
    while isinstance(t, App):
        t = t.fun
    return t
