"""Local proof surgery shared by the normalizers.

:func:`lift_left` moves a left rule (or absorb) above the right rule that
sits directly on its goal path; :func:`reapply` rebuilds a left rule on top
of a new major premise; :func:`weaken` adds unbounded formulas to a whole
subproof.
"""

from __future__ import annotations

from dataclasses import replace

from ..exc import NormalizationError
from ..kernel import (
    LEFT_RULES, RIGHT_RULES, Path, ProofTree, Rule, Sequent, major_index, product, rebuild,
    remove_one,
)
from ..syntax import ClauseTriple, Formula, constants, rename_constant
from ..terms import Const, Term, map_leaves


def category(node: ProofTree) -> str:
    """``I`` for one-premise rules, ``II`` for two-premise rules."""
    if node.rule is Rule.TOP_R:
        return "top"
    return "II" if len(node.premises) == 2 else "I"


# ── Renaming ─────────────────────────────────────────────────────────


def tree_constants(tree: ProofTree) -> set[str]:
    names: set[str] = set()

    def collect(node: ProofTree, _children: tuple) -> None:
        s = node.conclusion
        for f in s.gamma + s.delta + (s.goal,):
            names.update(constants(f))
        if isinstance(node.witness, Const):
            names.add(node.witness.name)

    rebuild(tree, collect)
    return names


def fresh_constant(base: str, avoid: set[str]) -> str:
    n = 1
    while f"{base}_{n}" in avoid:
        n += 1
    return f"{base}_{n}"


def rename_in_tree(tree: ProofTree, old: str, new: Const) -> ProofTree:
    """Replace the constant ``old`` by ``new`` in every formula of ``tree``."""

    def ren(f: Formula) -> Formula:
        return rename_constant(f, old, new)

    def term(t: Term | None) -> Term | None:
        if t is None:
            return None
        return map_leaves(t, lambda leaf: new if isinstance(leaf, Const) and leaf.name == old else leaf)

    def fn(node: ProofTree, premises: tuple) -> ProofTree:
        s = node.conclusion
        triple = node.triple.map(ren) if isinstance(node.triple, ClauseTriple) else None
        return ProofTree(
            node.rule,
            Sequent(tuple(map(ren, s.gamma)), tuple(map(ren, s.delta)), ren(s.goal)),
            premises,
            node.principal,
            term(node.witness),
            triple,
        )

    return rebuild(tree, fn)  # type: ignore[return-value]


def freshen_eigen(node: ProofTree, avoid: set[str]) -> ProofTree:
    """Rename the eigenvariable of a forallR node when it clashes with ``avoid``."""
    c = node.witness
    if not isinstance(c, Const) or c.name not in avoid:
        return node
    name = fresh_constant(c.name, avoid | tree_constants(node))
    new = Const(name, c.type)
    premise = rename_in_tree(node.premises[0], c.name, new)
    return replace(node, premises=(premise,), witness=new)


# ── Weakening ────────────────────────────────────────────────────────


def weaken(tree: ProofTree, gamma: tuple[Formula, ...]) -> ProofTree:
    """Add the formulas of ``gamma`` missing from the unbounded context of every node."""
    extra = tuple(f for f in gamma if f not in set(tree.conclusion.gamma))
    if not extra:
        return tree
    names: set[str] = set()
    for f in extra:
        names |= constants(f)
    return _weaken(tree, extra, names)


def _weaken(node: ProofTree, extra: tuple[Formula, ...], names: set[str]) -> ProofTree:
    if node.rule is Rule.FORALL_R:
        node = freshen_eigen(node, names)
    s = node.conclusion
    present = set(s.gamma)
    gamma = s.gamma + tuple(f for f in extra if f not in present)
    premises = tuple(_weaken(q, extra, names) for q in node.premises)
    return replace(node, conclusion=Sequent(gamma, s.delta, s.goal), premises=premises)


# ── Re-application ───────────────────────────────────────────────────


def reapply(lower: ProofTree, above: ProofTree, side: ProofTree | None = None) -> ProofTree:
    """Apply the rule of ``lower`` again, with ``above`` as its major premise.

    ``side`` replaces the left premise of lolliL/impL; it defaults to
    the original one, weakened to the new unbounded context.
    """
    s = above.conclusion
    made = product(lower)
    principal = lower.principal_formula()
    if made is None or principal is None:
        raise NormalizationError(f"{lower.rule.value} has no principal formula")
    rest = remove_one(s.delta, made)
    if rest is None:
        raise NormalizationError(f"premise does not contain the formula produced by {lower.rule.value}")
    if lower.rule is Rule.ABSORB:
        if principal not in s.gamma:
            raise NormalizationError("absorbed clause missing from the unbounded context")
        return ProofTree(Rule.ABSORB, Sequent(s.gamma, rest, s.goal), (above,), s.gamma.index(principal))
    if lower.rule in (Rule.LOLLI_L, Rule.IMP_L):
        side = weaken(side if side is not None else lower.premises[0], s.gamma)
        delta = rest + side.conclusion.delta + (principal,)
        premises: tuple[ProofTree, ...] = (side, above)
    else:
        delta = rest + (principal,)
        premises = (above,)
    return ProofTree(lower.rule, Sequent(s.gamma, delta, s.goal), premises, len(delta) - 1, lower.witness)


def _receiving(upper: ProofTree, made: Formula) -> list[int]:
    if upper.rule is Rule.WITH_R:
        return [0, 1]
    if upper.rule is Rule.TENSOR_R:
        for k, q in enumerate(upper.premises):
            if made in q.conclusion.delta:
                return [k]
        raise NormalizationError("no tensor branch receives the permuted formula")
    return [0]


def lift_left(lower: ProofTree) -> tuple[ProofTree, list[Path]]:
    """Permute ``lower`` above the right rule directly on its goal path.

    Returns the new subtree and the relative paths of the copies of
    ``lower`` that now sit on the right rule's premises.
    """
    if lower.rule not in LEFT_RULES and lower.rule is not Rule.ABSORB:
        raise NormalizationError(f"cannot lift {lower.rule.value}: not a left rule")
    upper = lower.premises[major_index(lower)]
    if upper.rule is Rule.TOP_R:
        return ProofTree(Rule.TOP_R, lower.conclusion), []
    if upper.rule is Rule.BANG_R:
        raise NormalizationError(f"cannot permute {lower.rule.value} above bangR")
    if upper.rule not in RIGHT_RULES:
        raise NormalizationError(f"cannot permute {lower.rule.value} above {upper.rule.value}")
    made = product(lower)
    if upper.rule is Rule.FORALL_R:
        s = lower.conclusion
        avoid: set[str] = set()
        for f in s.gamma + s.delta + (s.goal,):
            avoid |= constants(f)
        for q in lower.premises:
            avoid |= tree_constants(q) if q is not upper else set()
        upper = freshen_eigen(upper, avoid)
    premises = list(upper.premises)
    copies: list[Path] = []
    for k in _receiving(upper, made):
        premises[k] = reapply(lower, premises[k])
        copies.append((k,))
    new = ProofTree(upper.rule, lower.conclusion, tuple(premises), upper.principal, upper.witness, upper.triple)
    return new, copies
