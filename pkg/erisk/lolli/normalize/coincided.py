"""Coincided proofs: each absorb directly beneath the rule that uses its copy."""

from __future__ import annotations

import logging
import time

from ..exc import NormalizationError
from ..kernel import (
    LEFT_RULES, RIGHT_RULES, Path, ProofTree, Rule, Sequent, acts_on, detached_absorbs,
    is_coincided, is_simple, major_index, node_at, remove_one, replace_at,
)
from .permute import lift_left
from .trace import Step

log = logging.getLogger("lolli.normalize")


def to_coincided(tree: ProofTree, steps: list[Step] | None = None) -> ProofTree:
    """Coincided proof of the same sequent; ``tree`` must be simple."""
    if not is_simple(tree):
        raise NormalizationError("to_coincided needs a simple proof")
    if is_coincided(tree):
        return tree
    start = time.perf_counter()
    taken: list[Step] = []
    rounds = 0
    while True:
        found = detached_absorbs(tree)
        if not found:
            break
        rounds += 1
        if rounds > 10_000:
            raise NormalizationError("absorb lifting does not terminate")
        path = found[0]
        tree = replace_at(tree, path, _raise(node_at(tree, path), path, taken, force=True))
    if steps is not None:
        steps.extend(taken)
    log.debug("to_coincided lifted %d absorbs in %.3fms", rounds, (time.perf_counter() - start) * 1000)
    return tree


def _raise(node: ProofTree, path: Path, steps: list[Step], force: bool = False) -> ProofTree:
    """Lift the absorb ``node`` until its premise acts on the copy.

    With ``force`` the first lift happens even when the premise already
    acts on the copy; that untangles an absorb caught inside another
    clause's run.
    """
    above = node.premises[0]
    copy = node.principal_formula()
    if not force and acts_on(above, copy):  # type: ignore[arg-type]
        return node
    steps.append(Step(f"coincided.{above.rule.value}", path))
    if above.rule is Rule.TOP_R:
        return ProofTree(Rule.TOP_R, node.conclusion)
    if above.rule in RIGHT_RULES:
        new, copies = lift_left(node)
        for rel in copies:
            new = replace_at(new, rel, _raise(node_at(new, rel), path + rel, steps))
        return new
    if above.rule in LEFT_RULES or above.rule is Rule.ABSORB:
        new, k = _over_left(node, above)
        return replace_at(new, (k,), _raise(new.premises[k], path + (k,), steps))
    raise NormalizationError(f"cannot lift absorb above {above.rule.value}")


def _over_left(absorb: ProofTree, rule: ProofTree) -> tuple[ProofTree, int]:
    """Swap ``absorb`` with the left rule above it; returns the new node and the branch holding the copy."""
    copy = absorb.principal_formula()
    s = absorb.conclusion
    made = rule.principal_formula() if rule.rule is not Rule.ABSORB else None
    k = major_index(rule)
    if rule.rule is Rule.LOLLI_L:
        if copy in rule.premises[0].conclusion.delta:
            k = 0
        else:
            right = rule.premises[1]
            rest = remove_one(right.conclusion.delta, rule.principal_formula().cons)  # type: ignore[union-attr]
            if rest is None or copy not in rest:
                raise NormalizationError("absorbed copy is lost above lolliL")
    branch = rule.premises[k]
    delta = remove_one(branch.conclusion.delta, copy)  # type: ignore[arg-type]
    if delta is None:
        raise NormalizationError(f"absorbed copy is lost above {rule.rule.value}")
    lowered = ProofTree(Rule.ABSORB, Sequent(branch.conclusion.gamma, delta, branch.goal), (branch,), absorb.principal)
    premises = rule.premises[:k] + (lowered,) + rule.premises[k + 1:]
    if made is None:
        principal = rule.principal
    else:
        if made not in s.delta:
            raise NormalizationError(f"principal of {rule.rule.value} missing below the absorb")
        principal = s.delta.index(made)
    return ProofTree(rule.rule, s, premises, principal, rule.witness, rule.triple), k
