"""Shape classifiers: uniform, simple and coincided proofs.

A proof is *uniform* when every complex goal is concluded by its own
right rule.  Marking follows formulas from each ``id`` downwards: a left
rule *acts on the marked formula* when the formula it produces is the one
marked in its premise.  A uniform proof is *simple* when every left rule
acts on the marked formula, and *coincided* when, in addition, each
``absorb`` sits directly beneath the rule that uses its copy.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from ..syntax import (
    Atom, Bang, Builtin, Exists, Forall, Formula, Imp, Lolli, Oplus, Tensor, Top, With, instantiate,
)
from .proof import LEFT_RULES, Path, ProofTree, Rule, node_at, postorder_paths, preorder, preorder_paths

_RIGHT_RULE_FOR: dict[type, frozenset[Rule]] = {
    Top: frozenset({Rule.TOP_R}),
    With: frozenset({Rule.WITH_R}),
    Lolli: frozenset({Rule.LOLLI_R}),
    Imp: frozenset({Rule.IMP_R}),
    Forall: frozenset({Rule.FORALL_R}),
    Exists: frozenset({Rule.EXISTS_R}),
    Bang: frozenset({Rule.BANG_R}),
    Oplus: frozenset({Rule.OPLUS_R1, Rule.OPLUS_R2}),
    Tensor: frozenset({Rule.TENSOR_R}),
}


def is_complex(goal: Formula) -> bool:
    return not isinstance(goal, (Atom, Builtin))


def violates_uniformity(node: ProofTree) -> bool:
    goal = node.goal
    if not is_complex(goal):
        return False
    return node.rule not in _RIGHT_RULE_FOR[type(goal)]


@dataclass(frozen=True, slots=True)
class UniformityReport:
    uniform: bool
    offenders: tuple[Path, ...] = ()

    def __bool__(self) -> bool:
        return self.uniform


def is_uniform(tree: ProofTree) -> UniformityReport:
    offenders = tuple(path for path, node in preorder_paths(tree) if violates_uniformity(node))
    return UniformityReport(not offenders, offenders)


def nonuniformity_measure(tree: ProofTree) -> int:
    return sum(1 for node in preorder(tree) if violates_uniformity(node))


# ── Marking ──────────────────────────────────────────────────────────


def product(node: ProofTree) -> Formula | None:
    """The formula a left rule or absorb adds to its major premise."""
    f = node.principal_formula()
    if f is None:
        return None
    if node.rule is Rule.WITH_L1:
        return f.left
    if node.rule is Rule.WITH_L2:
        return f.right
    if node.rule in (Rule.LOLLI_L, Rule.IMP_L):
        return f.cons
    if node.rule is Rule.FORALL_L and node.witness is not None:
        return instantiate(f.body, node.witness)
    if node.rule is Rule.ABSORB:
        return f
    return None


def major_index(node: ProofTree) -> int:
    """Index of the premise that keeps the goal (the right one for lolliL/impL)."""
    return 1 if node.rule in (Rule.LOLLI_L, Rule.IMP_L) else 0


@dataclass(frozen=True, slots=True)
class Marking:
    """Marked formula of each node's bounded context, keyed by path."""

    marked: Mapping[Path, Formula | None]

    def position(self, tree: ProofTree, path: Path) -> int | None:
        f = self.marked.get(path)
        if f is None:
            return None
        delta = node_at(tree, path).conclusion.delta
        return delta.index(f) if f in delta else None


def _marked_formula(node: ProofTree, above: tuple[Formula | None, ...]) -> Formula | None:
    if node.rule is Rule.ID:
        return node.principal_formula()
    if node.rule in LEFT_RULES:
        produced = product(node)
        if above[major_index(node)] == produced and produced is not None:
            return node.principal_formula()
        return None
    if node.rule is Rule.ABSORB:
        carried = above[0]
        return carried if carried is not None and carried in node.conclusion.delta else None
    return None


def compute_marking(tree: ProofTree) -> Marking:
    marked: dict[Path, Formula | None] = {}
    for path, node in postorder_paths(tree):
        above = tuple(marked[path + (k,)] for k in range(len(node.premises)))
        marked[path] = _marked_formula(node, above)
    return Marking(marked)


def _acts_on_marked(node: ProofTree, marking: Marking, path: Path) -> bool:
    return marking.marked.get(path) is not None


def unmarked_left_rules(tree: ProofTree) -> list[Path]:
    marking = compute_marking(tree)
    return [
        path for path, node in preorder_paths(tree)
        if node.rule in LEFT_RULES and not _acts_on_marked(node, marking, path)
    ]


def is_simple(tree: ProofTree) -> bool:
    return bool(is_uniform(tree)) and not unmarked_left_rules(tree)


def acts_on(node: ProofTree, f: Formula) -> bool:
    """Whether ``node`` is a left rule or id whose principal formula is ``f``."""
    return (node.rule in LEFT_RULES or node.rule is Rule.ID) and node.principal_formula() == f


def detached_absorbs(tree: ProofTree) -> list[Path]:
    """Absorbs not directly beneath a use of their copy, in postorder.

    An absorb that is itself the major premise of a left rule or absorb
    is detached too: its copy would sit inside another clause's run.
    """
    found: list[Path] = []
    parents: dict[Path, ProofTree] = {}
    for path, node in preorder_paths(tree):
        for k, q in enumerate(node.premises):
            parents[path + (k,)] = node
    for path, node in postorder_paths(tree):
        if node.rule is not Rule.ABSORB:
            continue
        copy = node.principal_formula()
        mid_run = False
        parent = parents.get(path)
        if parent is not None and (parent.rule in LEFT_RULES or parent.rule is Rule.ABSORB):
            mid_run = path[-1] == major_index(parent)
        if mid_run or not acts_on(node.premises[0], copy):
            found.append(path)
    return found


def is_coincided(tree: ProofTree) -> bool:
    return is_simple(tree) and not detached_absorbs(tree)
