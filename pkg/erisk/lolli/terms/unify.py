"""First-order unification over terms, with occurs and eigenvariable scope checks.

``Bindings`` is the mutable, trailed store the engine backtracks over;
``Substitution`` is the immutable view handed out to callers.

Usage::

    s = unify(app(f, Meta("X")), app(f, Nat(3)))
    s.apply(Meta("X"))        # Nat(3)
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping

from ..exc import OutOfFragmentError
from .ops import has_loose_bound, map_leaves
from .term import SUCC, App, Const, Lam, Meta, Nat, Term, head


class Bindings:
    """Trailed metavariable store.

    Metas named in ``frozen`` behave as rigid constants: they unify only
    with themselves.
    """

    __slots__ = ("_map", "_trail", "frozen", "_fresh")

    def __init__(self, bindings: Mapping[str, Term] | None = None, frozen: Iterable[str] = ()) -> None:
        self._map: dict[str, Term] = dict(bindings or {})
        self._trail: list[str] = []
        self.frozen = frozenset(frozen)
        self._fresh = 0

    def __repr__(self) -> str:
        return f"Bindings({len(self._map)} bound)"

    def __len__(self) -> int:
        return len(self._map)

    # ── Trail ──────────────────────────────────────────────────────

    def mark(self) -> int:
        return len(self._trail)

    def undo(self, mark: int) -> None:
        trail = self._trail
        while len(trail) > mark:
            del self._map[trail.pop()]

    def bind(self, name: str, term: Term) -> None:
        self._map[name] = term
        self._trail.append(name)

    def bound_since(self, mark: int) -> tuple[str, ...]:
        """Names bound after ``mark``, oldest first."""
        return tuple(self._trail[mark:])

    # ── Lookup ─────────────────────────────────────────────────────

    def walk(self, t: Term) -> Term:
        while isinstance(t, Meta):
            bound = self._map.get(t.name)
            if bound is None:
                return t
            t = bound
        return t

    def apply(self, t: Term) -> Term:
        """Resolve every bound metavariable in ``t``."""
        if isinstance(t, Meta):
            w = self.walk(t)
            return w if isinstance(w, Meta) else self.apply(w)
        if isinstance(t, (App, Lam)):
            return map_leaves(t, self._apply_leaf)
        return t

    def _apply_leaf(self, leaf: Term) -> Term:
        return self.apply(leaf) if isinstance(leaf, Meta) else leaf

    def snapshot(self) -> Substitution:
        return Substitution({name: self.apply(t) for name, t in self._map.items()})

    # ── Unification ────────────────────────────────────────────────

    def unify(self, t1: Term, t2: Term) -> bool:
        """Unify in place; on failure every binding made here is undone."""
        mark = self.mark()
        if self._unify(t1, t2):
            return True
        self.undo(mark)
        return False

    def _unify(self, t1: Term, t2: Term) -> bool:
        stack = [(t1, t2)]
        while stack:
            a, b = stack.pop()
            a = self.walk(a)
            b = self.walk(b)
            if a is b or a == b:
                continue
            if isinstance(a, Meta) and a.name not in self.frozen:
                if not self._bind_checked(a, b):
                    return False
                continue
            if isinstance(b, Meta) and b.name not in self.frozen:
                if not self._bind_checked(b, a):
                    return False
                continue
            if isinstance(a, App) and isinstance(b, App):
                self._reject_flexible(a)
                self._reject_flexible(b)
                stack.append((a.fun, b.fun))
                stack.append((a.arg, b.arg))
                continue
            if isinstance(a, Lam) and isinstance(b, Lam):
                if a.arg_type != b.arg_type:
                    return False
                stack.append((a.body, b.body))
                continue
            if isinstance(a, Nat) and isinstance(b, App):
                a, b = b, a
            if isinstance(a, App) and isinstance(b, Nat):
                if a.fun != SUCC or b.value == 0:
                    return False
                stack.append((a.arg, Nat(b.value - 1)))
                continue
            return False
        return True

    def _reject_flexible(self, t: App) -> None:
        h = self.walk(head(t))
        if isinstance(h, Meta) and h.name not in self.frozen:
            raise OutOfFragmentError(f"metavariable ?{h.name} in function position")

    def _bind_checked(self, var: Meta, term: Term) -> bool:
        term = self.apply(term)
        if has_loose_bound(term):
            return False
        stack = [term]
        lowered: list[Meta] = []
        while stack:
            u = stack.pop()
            if isinstance(u, App):
                stack.append(u.fun)
                stack.append(u.arg)
            elif isinstance(u, Lam):
                stack.append(u.body)
            elif isinstance(u, Meta):
                if u.name == var.name:
                    return False
                if u.scope > var.scope and u.name not in self.frozen:
                    lowered.append(u)
            elif isinstance(u, Const) and u.scope is not None and u.scope >= var.scope:
                return False
        for u in lowered:
            self._fresh += 1
            self.bind(u.name, Meta(f"{u.name}'{self._fresh}", u.type, var.scope))
        self.bind(var.name, term)
        return True


class Substitution(Mapping[str, Term]):
    """Immutable, idempotent map from metavariable names to terms."""

    __slots__ = ("_map",)

    def __init__(self, bindings: Mapping[str, Term] | None = None) -> None:
        self._map = dict(bindings or {})

    def __getitem__(self, name: str) -> Term:
        return self._map[name]

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._map))

    def __len__(self) -> int:
        return len(self._map)

    def __repr__(self) -> str:
        inner = ", ".join(f"?{k} := {v!r}" for k, v in sorted(self._map.items()))
        return f"Substitution({inner})"

    def apply(self, t: Term) -> Term:
        return Bindings(self._map).apply(t)

    def bindings(self, frozen: Iterable[str] = ()) -> Bindings:
        return Bindings(self._map, frozen)


def unify(t1: Term, t2: Term, s: Substitution | None = None, frozen: Iterable[str] = ()) -> Substitution | None:
    """Most general unifier extending ``s``, or None when none exists."""
    store = Bindings(s._map if s is not None else None, frozen)
    if not store.unify(t1, t2):
        return None
    return store.snapshot()
