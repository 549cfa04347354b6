"""Uniform proofs: push left rules above right rules on complex goals.

Every step removes exactly one non-uniform node, so the loop runs as
many times as :func:`~lolli.kernel.nonuniformity_measure` says.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator

from ..exc import NormalizationError
from ..kernel import (
    Path, ProofTree, check_full, major_index, node_at, nonuniformity_measure, postorder_paths,
    replace_at, violates_uniformity,
)
from .permute import category, lift_left
from .trace import Step

log = logging.getLogger("lolli.normalize")


def first_violation(tree: ProofTree) -> Path | None:
    """Path of the first non-uniform node in postorder (its subproof is uniform)."""
    for path, node in postorder_paths(tree):
        if violates_uniformity(node):
            return path
    return None


def _scheme(lower: ProofTree) -> str:
    upper = lower.premises[major_index(lower)]
    if upper.rule.value == "topR":
        return f"uniform.top.{lower.rule.value}"
    return f"uniform.{category(lower)}-{category(upper)}.{lower.rule.value}.{upper.rule.value}"


def bubble(node: ProofTree, path: Path, steps: list[Step]) -> ProofTree:
    """Lift ``node`` until none of its copies sits under a complex goal."""
    steps.append(Step(_scheme(node), path))
    new, copies = lift_left(node)
    for rel in copies:
        copy = node_at(new, rel)
        if violates_uniformity(copy):
            new = replace_at(new, rel, bubble(copy, path + rel, steps))
    return new


def uniform_stages(tree: ProofTree) -> Iterator[tuple[ProofTree, list[Step]]]:
    """Yield the proof after each removed violation, with the steps it took."""
    measure = nonuniformity_measure(tree)
    while True:
        path = first_violation(tree)
        if path is None:
            return
        steps: list[Step] = []
        tree = replace_at(tree, path, bubble(node_at(tree, path), path, steps))
        after = nonuniformity_measure(tree)
        if after >= measure:
            raise NormalizationError(f"uniformity measure did not drop at {steps[0]}")
        measure = after
        yield tree, steps


def to_uniform(tree: ProofTree, steps: list[Step] | None = None) -> ProofTree:
    """Uniform proof of the same sequent.

    Raises :class:`NormalizationError` if ``tree`` is not a valid full
    proof or a left rule would have to move above ``!``.
    """
    report = check_full(tree)
    if not report:
        raise NormalizationError(f"not a valid full proof: {report.violation}")
    start = time.perf_counter()
    measure = nonuniformity_measure(tree)
    if measure == 0:
        return tree
    for tree, taken in uniform_stages(tree):
        if steps is not None:
            steps.extend(taken)
    log.debug("to_uniform removed %d violations in %.3fms", measure, (time.perf_counter() - start) * 1000)
    return tree


def to_uniform_steps(tree: ProofTree) -> list[ProofTree]:
    """The sequence of proofs visited on the way to uniformity, ``tree`` first."""
    report = check_full(tree)
    if not report:
        raise NormalizationError(f"not a valid full proof: {report.violation}")
    return [tree] + [stage for stage, _ in uniform_stages(tree)]
