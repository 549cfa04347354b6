"""Backchaining events of a finished proof, one line each: ``BCu <clause> <head>``."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from ..kernel import BC_RULES, ProofTree, Rule, preorder
from ..syntax import Atom, Formula, format_formula
from ..terms import Substitution


@dataclass(frozen=True, slots=True)
class TraceEvent:
    """One BC step.  ``unifier`` holds the bindings its head match made, resolved."""

    rule: Rule
    clause: str
    head: Atom
    unifier: Substitution = field(default_factory=Substitution)

    def __str__(self) -> str:
        return f"{self.rule.value} {self.clause} {format_formula(self.head)}"


def clause_label(node: ProofTree, labels: Mapping[Formula, str] | None = None) -> str:
    """Label of the clause a BC node uses; falls back to its context position."""
    clause = node.principal_formula()
    if labels and clause in labels:
        return labels[clause]
    where = "gamma" if node.rule is Rule.BC_U else "delta"
    return f"{where}[{node.principal}]"


def bc_events(
    tree: ProofTree,
    labels: Mapping[Formula, str] | None = None,
    unifiers: Sequence[Substitution] | None = None,
) -> tuple[TraceEvent, ...]:
    """One event per BC node, root to leaves, left to right.

    ``unifiers``, when given, pairs with the BC nodes in that same order.
    """
    nodes = [node for node in preorder(tree) if node.rule in BC_RULES]
    if unifiers is not None and len(unifiers) != len(nodes):
        raise ValueError(f"{len(unifiers)} unifiers for {len(nodes)} BC nodes")
    return tuple(
        TraceEvent(
            node.rule,
            clause_label(node, labels),
            node.triple.head,  # type: ignore[union-attr]
            unifiers[i] if unifiers is not None else Substitution(),
        )
        for i, node in enumerate(nodes)
    )


def format_trace(events: tuple[TraceEvent, ...]) -> str:
    return "".join(f"{event}\n" for event in events)
