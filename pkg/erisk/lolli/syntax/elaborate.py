"""Clause elaboration: the obligation triples a clause offers to backchaining.

A clause ``P`` is decomposed along ``&`` (either side), ``all`` (a fresh
metavariable instead of every closed instance), ``=>`` (an unbounded
obligation) and ``-o`` (a bounded obligation) until an atom is reached.
The result is a lazy, restartable stream of :class:`ClauseTriple`.

Usage::

    for triple in elaborate(clause):
        ...
    triple_in = contains(clause, triple)
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass

from ..terms import Bindings, Meta, SimpleType, Substitution
from .classify import require_clause
from .formula import (
    Atom, Formula, Forall, Imp, Lolli, With, formula_metas, formula_to_term, instantiate,
    map_terms,
)

MetaFactory = Callable[[str, SimpleType], Meta]


@dataclass(frozen=True, slots=True)
class ClauseTriple:
    """Obligations ``<unbounded, bounded, head>`` of one clause decomposition."""

    unbounded: tuple[Formula, ...]
    bounded: tuple[Formula, ...]
    head: Atom

    def formulas(self) -> tuple[Formula, ...]:
        return self.unbounded + self.bounded + (self.head,)

    def map(self, fn: Callable[[Formula], Formula]) -> ClauseTriple:
        return ClauseTriple(
            tuple(fn(g) for g in self.unbounded),
            tuple(fn(g) for g in self.bounded),
            fn(self.head),  # type: ignore[arg-type]
        )


@dataclass(frozen=True, slots=True)
class ElabStep:
    """One left-rule step of a decomposition.

    ``kind`` is ``with`` (detail: side 0/1), ``forall`` (detail: the
    metavariable standing for the witness), ``lolli`` or ``imp`` (detail:
    the obligation formula).
    """

    kind: str
    detail: object


class MetaSupply:
    """Numbered fresh metavariables: ``hint_1``, ``hint_2``, ..."""

    __slots__ = ("prefix", "_counter")

    def __init__(self, prefix: str = "") -> None:
        self.prefix = prefix
        self._counter = itertools.count(1)

    def __call__(self, hint: str, type: SimpleType) -> Meta:
        return Meta(f"{self.prefix}{hint}_{next(self._counter)}", type)


def elaboration_paths(clause: Formula, fresh: MetaFactory | None = None) -> Iterator[tuple[ClauseTriple, tuple[ElabStep, ...]]]:
    """Yield every triple of ``clause`` with the steps that produce it.

    Left alternatives of ``&`` come first.
    """
    require_clause(clause)
    fresh = fresh or MetaSupply()
    stack: list[tuple[Formula, tuple[Formula, ...], tuple[Formula, ...], tuple[ElabStep, ...]]] = [
        (clause, (), (), ())
    ]
    while stack:
        f, unb, bnd, steps = stack.pop()
        if isinstance(f, Atom):
            yield ClauseTriple(unb, bnd, f), steps
        elif isinstance(f, With):
            stack.append((f.right, unb, bnd, steps + (ElabStep("with", 1),)))
            stack.append((f.left, unb, bnd, steps + (ElabStep("with", 0),)))
        elif isinstance(f, Forall):
            meta = fresh(f.hint, f.type)
            stack.append((instantiate(f.body, meta), unb, bnd, steps + (ElabStep("forall", meta),)))
        elif isinstance(f, Imp):
            new_unb = unb if f.ante in unb else unb + (f.ante,)
            stack.append((f.cons, new_unb, bnd, steps + (ElabStep("imp", f.ante),)))
        elif isinstance(f, Lolli):
            stack.append((f.cons, unb, bnd + (f.ante,), steps + (ElabStep("lolli", f.ante),)))


def elaborate(
    clause: Formula,
    head_filter: Atom | None = None,
    fresh: MetaFactory | None = None,
) -> Iterator[ClauseTriple]:
    """Lazily enumerate the triples of ``clause``.

    With ``head_filter``, only triples whose head unifies with it are
    produced, with the unifier applied.
    """
    for triple, _ in elaboration_paths(clause, fresh):
        if head_filter is None:
            yield triple
            continue
        store = Bindings(frozen=formula_metas(head_filter))
        if store.unify(formula_to_term(triple.head), formula_to_term(head_filter)):
            yield triple.map(lambda g: apply_formula(g, store))


def apply_formula(f: Formula, store: Bindings | Substitution) -> Formula:
    """Resolve the metavariables of ``f`` under ``store``."""
    return map_terms(f, lambda term, depth: store.apply(term))


def unify_formulas(f1: Formula, f2: Formula, store: Bindings) -> bool:
    return store.unify(formula_to_term(f1), formula_to_term(f2))


def _unify_all(pairs: Iterable[tuple[Formula, Formula]], store: Bindings) -> bool:
    mark = store.mark()
    for f1, f2 in pairs:
        if not unify_formulas(f1, f2, store):
            store.undo(mark)
            return False
    return True


def match_triple(clause: Formula, triple: ClauseTriple) -> tuple[tuple[ElabStep, ...], Bindings] | None:
    """Find the decomposition of ``clause`` that yields ``triple``.

    Metavariables already in ``triple`` are treated as rigid.  Returns
    the steps and the bindings of the decomposition's own metavariables.
    """
    frozen: set[str] = set()
    for g in triple.formulas():
        frozen |= formula_metas(g)
    supply = MetaSupply("_k")
    for pattern, steps in elaboration_paths(clause, supply):
        if len(pattern.unbounded) != len(triple.unbounded) or len(pattern.bounded) != len(triple.bounded):
            continue
        store = Bindings(frozen=frozen)
        pairs = [(pattern.head, triple.head)]
        pairs += zip(pattern.unbounded, triple.unbounded)
        pairs += zip(pattern.bounded, triple.bounded)
        if _unify_all(pairs, store):
            return steps, store
    return None


def contains(clause: Formula, triple: ClauseTriple) -> bool:
    """Whether ``triple`` is an instance of some triple of ``clause``."""
    return match_triple(clause, triple) is not None
