"""Expand backchaining nodes back into absorb and left-rule runs."""

from __future__ import annotations

from ..exc import NormalizationError
from ..kernel import BC_RULES, ProofTree, Rule, Sequent, rebuild, remove_one
from ..syntax import Formula, Forall, Imp, Lolli, With, instantiate, match_triple


def expand(tree: ProofTree) -> ProofTree:
    """Full-calculus proof of the same sequent as the reduced proof ``tree``."""

    def fn(node: ProofTree, premises: tuple) -> ProofTree:
        if node.rule in BC_RULES:
            return _expand_bc(node, premises)
        if premises == node.premises:
            return node
        return node.with_premises(premises)

    return rebuild(tree, fn)  # type: ignore[return-value]


def _expand_bc(node: ProofTree, premises: tuple[ProofTree, ...]) -> ProofTree:
    s = node.conclusion
    triple = node.triple
    clause = node.principal_formula()
    if triple is None or clause is None:
        raise NormalizationError(f"{node.rule.value} node without clause or triple")
    match = match_triple(clause, triple)
    if match is None:
        raise NormalizationError("triple is not in the elaboration of its clause")
    elab_steps, store = match
    n = len(triple.unbounded)
    bounded_proofs = iter(premises[n:])

    # (rule, principal formula, product, witness, side premise) from the bottom up
    run: list[tuple[Rule, Formula, Formula, object, ProofTree | None]] = []
    f = clause
    for step in elab_steps:
        if step.kind == "with":
            made = f.right if step.detail else f.left  # type: ignore[attr-defined]
            run.append((Rule.WITH_L2 if step.detail else Rule.WITH_L1, f, made, None, None))
        elif step.kind == "forall":
            assert isinstance(f, Forall)
            witness = store.apply(step.detail)  # type: ignore[arg-type]
            made = instantiate(f.body, witness)
            run.append((Rule.FORALL_L, f, made, witness, None))
        elif step.kind == "lolli":
            assert isinstance(f, Lolli)
            made = f.cons
            run.append((Rule.LOLLI_L, f, made, None, next(bounded_proofs)))
        else:
            assert isinstance(f, Imp)
            made = f.cons
            k = _unbounded_index(f.ante, triple.unbounded)
            run.append((Rule.IMP_L, f, made, None, premises[k]))
        f = made
    if f != s.goal:
        raise NormalizationError("expanded run does not end on the goal")

    current = ProofTree(Rule.ID, Sequent(s.gamma, (s.goal,), s.goal), (), 0)
    for rule, principal, made, witness, side in reversed(run):
        rest = remove_one(current.conclusion.delta, made)
        if rest is None:
            raise NormalizationError(f"expanded {rule.value} lost its product")
        if side is not None:
            delta = rest + (side.conclusion.delta if rule is Rule.LOLLI_L else ()) + (principal,)
            above: tuple[ProofTree, ...] = (side, current)
        else:
            delta = rest + (principal,)
            above = (current,)
        current = ProofTree(rule, Sequent(s.gamma, delta, s.goal), above, len(delta) - 1, witness)  # type: ignore[arg-type]
    if node.rule is Rule.BC_U:
        rest = remove_one(current.conclusion.delta, clause)
        current = ProofTree(Rule.ABSORB, Sequent(s.gamma, rest, s.goal), (current,), node.principal)  # type: ignore[arg-type]
    return current


def _unbounded_index(ante: Formula, unbounded: tuple[Formula, ...]) -> int:
    for k, g in enumerate(unbounded):
        if g == ante:
            return k
    raise NormalizationError("unbounded obligation missing from the triple")
