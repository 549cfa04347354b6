"""Explicit proof trees for the full calculus and the backchaining system.

Trees produced by proof search can be thousands of nodes deep, so every
traversal here is iterative.

``principal`` indexes ``conclusion.gamma`` for ``absorb`` and ``BCu`` and
``conclusion.delta`` for every other rule that has one.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterator
from dataclasses import dataclass, replace

from ..syntax import ClauseTriple, Formula
from ..terms import Term
from .sequent import Sequent

Path = tuple[int, ...]


class Rule(str, enum.Enum):
    ID = "id"
    ABSORB = "absorb"
    TOP_R = "topR"
    WITH_L1 = "withL1"
    WITH_L2 = "withL2"
    WITH_R = "withR"
    LOLLI_L = "lolliL"
    LOLLI_R = "lolliR"
    IMP_L = "impL"
    IMP_R = "impR"
    FORALL_L = "forallL"
    FORALL_R = "forallR"
    EXISTS_R = "existsR"
    BANG_R = "bangR"
    OPLUS_R1 = "oplusR1"
    OPLUS_R2 = "oplusR2"
    TENSOR_R = "tensorR"
    BC_U = "BCu"
    BC_B = "BCb"
    BUILTIN = "builtin"


LEFT_RULES = frozenset({Rule.WITH_L1, Rule.WITH_L2, Rule.LOLLI_L, Rule.IMP_L, Rule.FORALL_L})
RIGHT_RULES = frozenset({
    Rule.TOP_R, Rule.WITH_R, Rule.LOLLI_R, Rule.IMP_R, Rule.FORALL_R, Rule.EXISTS_R,
    Rule.BANG_R, Rule.OPLUS_R1, Rule.OPLUS_R2, Rule.TENSOR_R,
})
BC_RULES = frozenset({Rule.BC_U, Rule.BC_B})
FULL_RULES = LEFT_RULES | RIGHT_RULES | {Rule.ID, Rule.ABSORB, Rule.BUILTIN}
REDUCED_RULES = RIGHT_RULES | BC_RULES | {Rule.ID, Rule.BUILTIN}
GAMMA_PRINCIPAL = frozenset({Rule.ABSORB, Rule.BC_U})


@dataclass(frozen=True, slots=True, eq=False, repr=False)
class ProofTree:
    rule: Rule
    conclusion: Sequent
    premises: tuple[ProofTree, ...] = ()
    principal: int | None = None
    witness: Term | None = None
    triple: ClauseTriple | None = None

    def __repr__(self) -> str:
        return f"ProofTree({self.rule.value}, {self.conclusion}, premises={len(self.premises)})"

    @property
    def goal(self) -> Formula:
        return self.conclusion.goal

    def principal_formula(self) -> Formula | None:
        if self.principal is None:
            return None
        ctx = self.conclusion.gamma if self.rule in GAMMA_PRINCIPAL else self.conclusion.delta
        if not 0 <= self.principal < len(ctx):
            return None
        return ctx[self.principal]

    def with_premises(self, premises: tuple[ProofTree, ...]) -> ProofTree:
        return replace(self, premises=premises)


# ── Traversal ────────────────────────────────────────────────────────


def preorder(tree: ProofTree) -> Iterator[ProofTree]:
    stack = [tree]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.premises))


def preorder_paths(tree: ProofTree) -> Iterator[tuple[Path, ProofTree]]:
    """Preorder with paths.  Paths cost O(depth) each; prefer :func:`preorder` on deep trees."""
    stack: list[tuple[Path, ProofTree]] = [((), tree)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for k in range(len(node.premises) - 1, -1, -1):
            stack.append((path + (k,), node.premises[k]))


def postorder_paths(tree: ProofTree) -> Iterator[tuple[Path, ProofTree]]:
    stack: list[tuple[Path, ProofTree, bool]] = [((), tree, False)]
    while stack:
        path, node, expanded = stack.pop()
        if expanded:
            yield path, node
            continue
        stack.append((path, node, True))
        for k in range(len(node.premises) - 1, -1, -1):
            stack.append((path + (k,), node.premises[k], False))


def located_preorder(tree: ProofTree) -> Iterator[tuple[ProofTree, Callable[[], Path]]]:
    """Preorder yielding each node with a thunk that computes its path on demand."""
    parents: list[tuple[int, int]] = []
    nodes: list[ProofTree] = []
    stack: list[tuple[ProofTree, int, int]] = [(tree, -1, -1)]
    while stack:
        node, parent, k = stack.pop()
        index = len(nodes)
        nodes.append(node)
        parents.append((parent, k))

        def path(i: int = index) -> Path:
            steps: list[int] = []
            while parents[i][0] >= 0:
                steps.append(parents[i][1])
                i = parents[i][0]
            return tuple(reversed(steps))

        yield node, path
        for j in range(len(node.premises) - 1, -1, -1):
            stack.append((node.premises[j], index, j))


def rebuild(tree: ProofTree, fn: Callable[[ProofTree, tuple], object]) -> object:
    """Fold ``fn(node, child_results)`` bottom-up without recursion."""
    results: list[object] = []
    stack: list[tuple[ProofTree, bool]] = [(tree, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            n = len(node.premises)
            children = tuple(results[len(results) - n:]) if n else ()
            if n:
                del results[len(results) - n:]
            results.append(fn(node, children))
        else:
            stack.append((node, True))
            for q in reversed(node.premises):
                stack.append((q, False))
    return results[0]


def node_at(tree: ProofTree, path: Path) -> ProofTree:
    node = tree
    for k in path:
        node = node.premises[k]
    return node


def replace_at(tree: ProofTree, path: Path, new: ProofTree) -> ProofTree:
    """Copy of ``tree`` with the subtree at ``path`` replaced by ``new``."""
    chain = [tree]
    for k in path[:-1]:
        chain.append(chain[-1].premises[k])
    result = new
    for node, k in zip(reversed(chain), reversed(path)):
        premises = node.premises[:k] + (result,) + node.premises[k + 1:]
        result = node.with_premises(premises)
    return result


def size(tree: ProofTree) -> int:
    return sum(1 for _ in preorder(tree))


def count_rules(tree: ProofTree) -> dict[Rule, int]:
    counts: dict[Rule, int] = {}
    for node in preorder(tree):
        counts[node.rule] = counts.get(node.rule, 0) + 1
    return counts


def format_path(path: Path) -> str:
    return ".".join(str(k) for k in path) if path else "root"
