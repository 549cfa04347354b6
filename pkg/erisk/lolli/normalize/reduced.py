"""Collapse coincided proofs into the backchaining system.

A spine that starts with ``absorb`` becomes ``BCu``, any other spine
becomes ``BCb``.  The spine's side premises turn into the obligation
premises of the backchaining node, unbounded ones first.
"""

from __future__ import annotations

import logging
import time

from ..exc import NormalizationError
from ..kernel import (
    BC_RULES, LEFT_RULES, Path, ProofTree, Rule, check_reduced, is_coincided, major_index, preorder,
    product,
)
from ..syntax import Atom, ClauseTriple, Formula
from .trace import Step

log = logging.getLogger("lolli.normalize")


def to_reduced(tree: ProofTree, steps: list[Step] | None = None) -> ProofTree:
    """Backchaining proof of the same sequent; ``tree`` must be coincided."""
    if any(node.rule in BC_RULES for node in preorder(tree)):
        raise NormalizationError("proof is already in the backchaining system")
    if not is_coincided(tree):
        raise NormalizationError("to_reduced needs a coincided proof")
    start = time.perf_counter()
    taken: list[Step] = []
    result = _reduce(tree, (), taken)
    report = check_reduced(result)
    if not report:
        raise NormalizationError(f"collapsed proof does not check: {report.violation}")
    if steps is not None:
        steps.extend(taken)
    log.debug("to_reduced built %d backchaining nodes in %.3fms", len(taken), (time.perf_counter() - start) * 1000)
    return result


def _reduce(node: ProofTree, path: Path, steps: list[Step]) -> ProofTree:
    if node.rule is Rule.ID or node.rule is Rule.ABSORB or node.rule in LEFT_RULES:
        return _collapse(node, path, steps)
    if not node.premises:
        return node
    return node.with_premises(tuple(_reduce(q, path + (k,), steps) for k, q in enumerate(node.premises)))


def _collapse(node: ProofTree, path: Path, steps: list[Step]) -> ProofTree:
    clause = node.principal_formula()
    if clause is None:
        raise NormalizationError(f"{node.rule.value} at {path} has no principal formula")
    rule = Rule.BC_B
    current: Formula = clause
    n = node
    if n.rule is Rule.ABSORB:
        rule = Rule.BC_U
        n = n.premises[0]
    unbounded: list[Formula] = []
    bounded: list[Formula] = []
    unbounded_proofs: list[ProofTree] = []
    bounded_proofs: list[ProofTree] = []
    while n.rule in LEFT_RULES:
        if n.principal_formula() != current:
            raise NormalizationError(f"run at {path} leaves the clause it started on")
        if n.rule is Rule.LOLLI_L:
            bounded.append(current.ante)  # type: ignore[attr-defined]
            bounded_proofs.append(n.premises[0])
        elif n.rule is Rule.IMP_L and current.ante not in unbounded:  # type: ignore[attr-defined]
            unbounded.append(current.ante)  # type: ignore[attr-defined]
            unbounded_proofs.append(n.premises[0])
        current = product(n)  # type: ignore[assignment]
        n = n.premises[major_index(n)]
    if n.rule is not Rule.ID or n.principal_formula() != current:
        raise NormalizationError(f"run at {path} does not end in id on its clause head")
    if not isinstance(current, Atom):
        raise NormalizationError(f"run at {path} ends on a non-atomic formula")
    triple = ClauseTriple(tuple(unbounded), tuple(bounded), current)
    steps.append(Step(f"reduced.{rule.value}", path))
    obligations = unbounded_proofs + bounded_proofs
    premises = tuple(_reduce(q, path + (k,), steps) for k, q in enumerate(obligations))
    return ProofTree(rule, node.conclusion, premises, node.principal, None, triple)
