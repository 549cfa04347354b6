"""Simple proofs: every left rule acts on the marked formula.

A uniform proof ends each branch in a *spine*: a run of left rules and
absorbs over an atomic goal, closed by ``id`` (or a builtin leaf).  The
*thread* of a spine is the chain of steps that produce the atom ``id``
uses.  Steps off the thread are moved into the side premise their product
flows into, and the side premises are normalized again.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from ..exc import NormalizationError
from ..kernel import (
    LEFT_RULES, Path, ProofTree, Rule, is_simple, is_uniform, major_index, product, same_multiset,
)
from ..syntax import Formula
from .permute import reapply
from .trace import Step
from .uniform import to_uniform

log = logging.getLogger("lolli.normalize")

_MAX_NESTING = 500


@dataclass(eq=False, slots=True)
class _Occurrence:
    formula: Formula
    producer: int | None


@dataclass(slots=True)
class _StepFlow:
    consumed: _Occurrence | None
    side: list[_Occurrence] = field(default_factory=list)


def _is_run_step(node: ProofTree) -> bool:
    return node.rule in LEFT_RULES or node.rule is Rule.ABSORB


def to_simple(tree: ProofTree, steps: list[Step] | None = None) -> ProofTree:
    """Simple proof of the same sequent; ``tree`` must be uniform."""
    report = is_uniform(tree)
    if not report:
        raise NormalizationError(f"to_simple needs a uniform proof; offending node at {report.offenders[0]}")
    if is_simple(tree):
        return tree
    start = time.perf_counter()
    taken: list[Step] = []
    result = _simplify(tree, (), taken, 0)
    if result.conclusion != tree.conclusion:
        raise NormalizationError("to_simple changed the end-sequent")
    if steps is not None:
        steps.extend(taken)
    log.debug("to_simple moved %d steps in %.3fms", len(taken), (time.perf_counter() - start) * 1000)
    return result


def _simplify(node: ProofTree, path: Path, steps: list[Step], nesting: int) -> ProofTree:
    if nesting > _MAX_NESTING:
        raise NormalizationError("side premises nested too deeply while simplifying")
    if _is_run_step(node):
        return _rebuild_spine(node, path, steps, nesting)
    if not node.premises:
        return node
    premises = tuple(_simplify(q, path + (k,), steps, nesting) for k, q in enumerate(node.premises))
    return node.with_premises(premises)


def _take(pool: list[_Occurrence], f: Formula) -> _Occurrence:
    for k, occ in enumerate(pool):
        if occ.formula == f:
            return pool.pop(k)
    raise NormalizationError("spine consumes a formula that is not available")


def _rebuild_spine(node: ProofTree, path: Path, steps: list[Step], nesting: int) -> ProofTree:
    run: list[ProofTree] = []
    top = node
    while _is_run_step(top):
        run.append(top)
        top = top.premises[major_index(top)]
    if top.rule not in (Rule.ID, Rule.BUILTIN):
        raise NormalizationError(f"spine at {path} ends in {top.rule.value}, expected id")

    # Simulate the bounded context from the bottom of the run upwards.
    pool = [_Occurrence(f, None) for f in node.conclusion.delta]
    flows: list[_StepFlow] = []
    for i, step in enumerate(run):
        flow = _StepFlow(None)
        if step.rule is not Rule.ABSORB:
            flow.consumed = _take(pool, step.principal_formula())  # type: ignore[arg-type]
            if step.rule is Rule.LOLLI_L:
                flow.side = [_take(pool, f) for f in step.premises[0].conclusion.delta]
        pool.append(_Occurrence(product(step), i))  # type: ignore[arg-type]
        flows.append(flow)

    thread: list[int] = []
    if top.rule is Rule.ID:
        if len(pool) != 1 or pool[0].formula != top.goal:
            raise NormalizationError(f"spine at {path} does not close on its atom")
        occ: _Occurrence | None = pool[0]
        while occ is not None and occ.producer is not None:
            thread.append(occ.producer)
            if run[occ.producer].rule is Rule.ABSORB:
                break
            occ = flows[occ.producer].consumed
    elif pool:
        raise NormalizationError(f"builtin leaf at {path} with a non-empty bounded context")
    thread.reverse()

    placed: set[int] = set()
    sides: dict[int, ProofTree] = {}

    def wrap(occ: _Occurrence | None, proof: ProofTree) -> ProofTree:
        while occ is not None and occ.producer is not None:
            i = occ.producer
            if i in placed:
                raise NormalizationError("a spine step was placed twice")
            placed.add(i)
            steps.append(Step(f"simple.{run[i].rule.value}", path))
            proof = reapply(run[i], proof, side_of(i))
            occ = flows[i].consumed
        return proof

    def side_of(i: int) -> ProofTree | None:
        if run[i].rule not in (Rule.LOLLI_L, Rule.IMP_L):
            return None
        if i not in sides:
            proof = run[i].premises[0]
            for occ in flows[i].side:
                proof = wrap(occ, proof)
            sides[i] = proof
        return sides[i]

    spine = top
    for j in reversed(thread):
        side = side_of(j)
        if side is not None:
            side = _finish_side(side, path, steps, nesting)
        spine = reapply(run[j], spine, side)
    placed.update(thread)
    if len(placed) != len(run):
        raise NormalizationError(f"spine at {path} leaves steps unplaced")
    if not same_multiset(spine.conclusion.delta, node.conclusion.delta):
        raise NormalizationError(f"spine at {path} changed its bounded context")
    return spine


def _finish_side(side: ProofTree, path: Path, steps: list[Step], nesting: int) -> ProofTree:
    if not is_uniform(side):
        steps.append(Step("simple.reuniform", path))
        side = to_uniform(side)
    return _simplify(side, path, steps, nesting + 1)
