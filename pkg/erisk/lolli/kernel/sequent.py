"""Sequents ``Gamma ; Delta |- G`` and multiset arithmetic on contexts."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ..syntax import Formula, format_formula


def remove_one(items: Sequence[Formula], f: Formula) -> tuple[Formula, ...] | None:
    """``items`` minus one occurrence of ``f``, or None if absent."""
    for k, g in enumerate(items):
        if g == f:
            return tuple(items[:k]) + tuple(items[k + 1:])
    return None


def remove_all(items: Sequence[Formula], removed: Iterable[Formula]) -> tuple[Formula, ...] | None:
    """Multiset difference; None when ``removed`` is not a sub-multiset."""
    rest: tuple[Formula, ...] | None = tuple(items)
    for f in removed:
        rest = remove_one(rest, f)
        if rest is None:
            return None
    return rest


def drop_index(items: Sequence[Formula], k: int) -> tuple[Formula, ...]:
    return tuple(items[:k]) + tuple(items[k + 1:])


def same_multiset(a: Iterable[Formula], b: Iterable[Formula]) -> bool:
    return Counter(a) == Counter(b)


@dataclass(frozen=True, slots=True, eq=False)
class Sequent:
    """``gamma`` is a set (order and repeats ignored), ``delta`` a multiset.

    Equality follows those semantics, so two sequents listing the same
    contexts in different orders are equal.
    """

    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]
    goal: Formula

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return (
            self.goal == other.goal
            and set(self.gamma) == set(other.gamma)
            and Counter(self.delta) == Counter(other.delta)
        )

    def __hash__(self) -> int:
        return hash((self.goal, frozenset(self.gamma), frozenset(Counter(self.delta).items())))

    def __str__(self) -> str:
        return format_sequent(self)


def format_context(items: Sequence[Formula]) -> str:
    return ", ".join(format_formula(f) for f in items) if items else "."


def format_sequent(s: Sequent) -> str:
    return f"{format_context(s.gamma)} ; {format_context(s.delta)} |- {format_formula(s.goal)}"
