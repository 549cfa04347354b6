"""Proof checkers for the full calculus and the backchaining system.

The checker verifies the context splits and principal positions stored
in the tree; it never searches.  Verdicts are values::

    report = check_full(tree)
    if not report:
        print(report.violation)     # 'tensorR@0: bounded contexts of premises ...'
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable
from dataclasses import dataclass

from ..syntax import (
    Atom, Bang, Builtin, Exists, Forall, Formula, Imp, Lolli, Oplus, Tensor, Top, With,
    clause_problem, constants, contains, evaluate_builtin, goal_problem, instantiate, nat_value,
)
from ..terms import Const
from .proof import FULL_RULES, REDUCED_RULES, Path, ProofTree, Rule, format_path, located_preorder
from .sequent import drop_index, same_multiset

log = logging.getLogger("lolli.kernel")


@dataclass(frozen=True, slots=True)
class Violation:
    path: Path
    rule: Rule
    reason: str

    def __str__(self) -> str:
        return f"{self.rule.value}@{format_path(self.path)}: {self.reason}"


@dataclass(frozen=True, slots=True)
class CheckReport:
    ok: bool
    violation: Violation | None = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.ok


def check_full(tree: ProofTree) -> CheckReport:
    """Check every node against the full calculus (no backchaining nodes)."""
    return _check(tree, FULL_RULES, "full")


def check_reduced(tree: ProofTree) -> CheckReport:
    """Check against the backchaining system: right rules, id, BCu, BCb, builtin."""
    return _check(tree, REDUCED_RULES, "reduced")


def _check(tree: ProofTree, allowed: frozenset[Rule], system: str) -> CheckReport:
    start = time.perf_counter()
    root = tree.conclusion
    for f in root.gamma + root.delta:
        problem = clause_problem(f)
        if problem is not None:
            return CheckReport(False, Violation((), tree.rule, f"context formula is not a clause: {problem[1]}"))
    problem = goal_problem(root.goal)
    if problem is not None:
        return CheckReport(False, Violation((), tree.rule, f"goal is not a goal formula: {problem[1]}"))
    count = 0
    for node, path in located_preorder(tree):
        count += 1
        if node.rule not in allowed:
            reason = f"rule {node.rule.value} is not part of the {system} system"
        else:
            reason = _check_node(node)
        if reason is not None:
            violation = Violation(path(), node.rule, reason)
            log.debug("%s check failed: %s", system, violation)
            return CheckReport(False, violation, count)
    log.debug("%s check of %d nodes completed in %.3fms", system, count, (time.perf_counter() - start) * 1000)
    return CheckReport(True, None, count)


# ── Per-rule schemas ─────────────────────────────────────────────────

_ARITY = {
    Rule.ID: 0, Rule.TOP_R: 0, Rule.BUILTIN: 0,
    Rule.ABSORB: 1, Rule.WITH_L1: 1, Rule.WITH_L2: 1, Rule.LOLLI_R: 1, Rule.IMP_R: 1,
    Rule.FORALL_L: 1, Rule.FORALL_R: 1, Rule.EXISTS_R: 1, Rule.BANG_R: 1,
    Rule.OPLUS_R1: 1, Rule.OPLUS_R2: 1,
    Rule.WITH_R: 2, Rule.LOLLI_L: 2, Rule.IMP_L: 2, Rule.TENSOR_R: 2,
}


def _check_node(node: ProofTree) -> str | None:
    expected = _ARITY.get(node.rule)
    if expected is not None and len(node.premises) != expected:
        return f"expected {expected} premises, got {len(node.premises)}"
    return _SCHEMAS[node.rule](node)


def _same_gamma(node: ProofTree, premise: ProofTree) -> str | None:
    if set(premise.conclusion.gamma) != set(node.conclusion.gamma):
        return "unbounded context changed"
    return None


def _principal(node: ProofTree, cls: type | tuple[type, ...]) -> tuple[Formula | None, str | None]:
    ctx = node.conclusion.delta
    p = node.principal
    if p is None or not 0 <= p < len(ctx):
        return None, f"principal position {p} outside bounded context"
    f = ctx[p]
    if not isinstance(f, cls):
        return None, f"principal formula is not a {_names(cls)}"
    return f, None


def _names(cls: type | tuple[type, ...]) -> str:
    if isinstance(cls, tuple):
        return "/".join(c.__name__ for c in cls)
    return cls.__name__


def _goal(node: ProofTree, cls: type) -> tuple[Formula | None, str | None]:
    if not isinstance(node.goal, cls):
        return None, f"goal is not a {cls.__name__}"
    return node.goal, None


def _rest(node: ProofTree) -> tuple[Formula, ...]:
    return drop_index(node.conclusion.delta, node.principal)  # type: ignore[arg-type]


def _check_id(node: ProofTree) -> str | None:
    f, err = _principal(node, Atom)
    if err:
        return err
    if len(node.conclusion.delta) != 1:
        return "bounded context must hold exactly the principal atom"
    if f != node.goal:
        return "principal atom differs from goal"
    return None


def _check_absorb(node: ProofTree) -> str | None:
    gamma = node.conclusion.gamma
    p = node.principal
    if p is None or not 0 <= p < len(gamma):
        return f"principal position {p} outside unbounded context"
    (premise,) = node.premises
    err = _same_gamma(node, premise)
    if err:
        return err
    if premise.goal != node.goal:
        return "goal changed"
    if not same_multiset(premise.conclusion.delta, node.conclusion.delta + (gamma[p],)):
        return "premise bounded context must add the absorbed copy"
    return None


def _check_top(node: ProofTree) -> str | None:
    return _goal(node, Top)[1]


def _check_with_l(node: ProofTree) -> str | None:
    f, err = _principal(node, With)
    if err:
        return err
    product = f.left if node.rule is Rule.WITH_L1 else f.right
    return _unary_left(node, product)


def _unary_left(node: ProofTree, product: Formula) -> str | None:
    (premise,) = node.premises
    err = _same_gamma(node, premise)
    if err:
        return err
    if premise.goal != node.goal:
        return "goal changed"
    if not same_multiset(premise.conclusion.delta, _rest(node) + (product,)):
        return "premise bounded context must replace the principal by its component"
    return None


def _check_with_r(node: ProofTree) -> str | None:
    g, err = _goal(node, With)
    if err:
        return err
    for premise, sub in zip(node.premises, (g.left, g.right)):
        err = _same_gamma(node, premise)
        if err:
            return err
        if premise.goal != sub:
            return "premise goal is not the matching conjunct"
        if not same_multiset(premise.conclusion.delta, node.conclusion.delta):
            return "both premises must share the bounded context"
    return None


def _check_lolli_l(node: ProofTree) -> str | None:
    f, err = _principal(node, Lolli)
    if err:
        return err
    left, right = node.premises
    for premise in node.premises:
        err = _same_gamma(node, premise)
        if err:
            return err
    if left.goal != f.ante:
        return "left premise must prove the antecedent"
    if right.goal != node.goal:
        return "right premise must keep the goal"
    rest = list(right.conclusion.delta)
    if f.cons not in rest:
        return "right premise must receive the consequent"
    rest.remove(f.cons)
    if not same_multiset(list(left.conclusion.delta) + rest, _rest(node)):
        return "bounded contexts of premises do not partition the conclusion"
    return None


def _check_imp_l(node: ProofTree) -> str | None:
    f, err = _principal(node, Imp)
    if err:
        return err
    left, right = node.premises
    for premise in node.premises:
        err = _same_gamma(node, premise)
        if err:
            return err
    if left.conclusion.delta:
        return "left premise of impL must have an empty bounded context"
    if left.goal != f.ante:
        return "left premise must prove the antecedent"
    if right.goal != node.goal:
        return "right premise must keep the goal"
    if not same_multiset(right.conclusion.delta, _rest(node) + (f.cons,)):
        return "right premise bounded context must replace the principal by its consequent"
    return None


def _check_forall_l(node: ProofTree) -> str | None:
    f, err = _principal(node, Forall)
    if err:
        return err
    if node.witness is None:
        return "forallL needs a witness"
    return _unary_left(node, instantiate(f.body, node.witness))


def _check_lolli_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Lolli)
    if err:
        return err
    (premise,) = node.premises
    err = _same_gamma(node, premise)
    if err:
        return err
    if premise.goal != g.cons:
        return "premise goal must be the consequent"
    if not same_multiset(premise.conclusion.delta, node.conclusion.delta + (g.ante,)):
        return "premise bounded context must add the antecedent"
    return None


def _check_imp_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Imp)
    if err:
        return err
    (premise,) = node.premises
    if set(premise.conclusion.gamma) != set(node.conclusion.gamma) | {g.ante}:
        return "premise unbounded context must add the antecedent"
    if premise.goal != g.cons:
        return "premise goal must be the consequent"
    if not same_multiset(premise.conclusion.delta, node.conclusion.delta):
        return "bounded context changed"
    return None


def _check_forall_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Forall)
    if err:
        return err
    c = node.witness
    if not isinstance(c, Const) or c.logical:
        return "forallR needs an eigenvariable constant"
    s = node.conclusion
    used: set[str] = set()
    for f in s.gamma + s.delta + (s.goal,):
        used |= constants(f)
    if c.name in used:
        return f"eigenvariable {c.name} occurs in the conclusion"
    return _unary_right(node, instantiate(g.body, c))


def _unary_right(node: ProofTree, sub: Formula) -> str | None:
    (premise,) = node.premises
    err = _same_gamma(node, premise)
    if err:
        return err
    if premise.goal != sub:
        return "premise goal does not match the rule"
    if not same_multiset(premise.conclusion.delta, node.conclusion.delta):
        return "bounded context changed"
    return None


def _check_exists_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Exists)
    if err:
        return err
    if node.witness is None:
        return "existsR needs a witness"
    return _unary_right(node, instantiate(g.body, node.witness))


def _check_bang_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Bang)
    if err:
        return err
    if node.conclusion.delta:
        return "bangR requires an empty bounded context"
    return _unary_right(node, g.body)


def _check_oplus_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Oplus)
    if err:
        return err
    return _unary_right(node, g.left if node.rule is Rule.OPLUS_R1 else g.right)


def _check_tensor_r(node: ProofTree) -> str | None:
    g, err = _goal(node, Tensor)
    if err:
        return err
    left, right = node.premises
    for premise in node.premises:
        err = _same_gamma(node, premise)
        if err:
            return err
    if left.goal != g.left or right.goal != g.right:
        return "premise goals must be the two tensor components"
    if not same_multiset(left.conclusion.delta + right.conclusion.delta, node.conclusion.delta):
        return "bounded contexts of premises do not partition the conclusion"
    return None


def _check_builtin(node: ProofTree) -> str | None:
    g, err = _goal(node, Builtin)
    if err:
        return err
    if node.conclusion.delta:
        return "builtin requires an empty bounded context"
    values = tuple(nat_value(a) for a in g.args)
    if any(v is None for v in values):
        return "builtin arguments must be ground numerals"
    if not evaluate_builtin(g.rel, values):  # type: ignore[arg-type]
        return f"builtin {g.rel.value} does not hold"
    return None


def _check_bc(node: ProofTree) -> str | None:
    s = node.conclusion
    p = node.principal
    if node.rule is Rule.BC_U:
        if p is None or not 0 <= p < len(s.gamma):
            return f"principal position {p} outside unbounded context"
        clause = s.gamma[p]
        remaining = s.delta
    else:
        if p is None or not 0 <= p < len(s.delta):
            return f"principal position {p} outside bounded context"
        clause = s.delta[p]
        remaining = drop_index(s.delta, p)
    triple = node.triple
    if triple is None:
        return "backchaining node needs a clause triple"
    if triple.head != s.goal:
        return "triple head differs from goal"
    n, m = len(triple.unbounded), len(triple.bounded)
    if len(node.premises) != n + m:
        return f"expected {n + m} premises, got {len(node.premises)}"
    for premise in node.premises:
        err = _same_gamma(node, premise)
        if err:
            return err
    for premise, goal in zip(node.premises[:n], triple.unbounded):
        if premise.goal != goal:
            return "unbounded obligation premise has the wrong goal"
        if premise.conclusion.delta:
            return "unbounded obligation premise must have an empty bounded context"
    pooled: list[Formula] = []
    for premise, goal in zip(node.premises[n:], triple.bounded):
        if premise.goal != goal:
            return "bounded obligation premise has the wrong goal"
        pooled.extend(premise.conclusion.delta)
    if not same_multiset(pooled, remaining):
        return "bounded contexts of obligations do not partition the conclusion"
    if not contains(clause, triple):
        return "triple is not in the elaboration of its clause"
    return None


_SCHEMAS: dict[Rule, Callable[[ProofTree], str | None]] = {
    Rule.ID: _check_id,
    Rule.ABSORB: _check_absorb,
    Rule.TOP_R: _check_top,
    Rule.WITH_L1: _check_with_l,
    Rule.WITH_L2: _check_with_l,
    Rule.WITH_R: _check_with_r,
    Rule.LOLLI_L: _check_lolli_l,
    Rule.LOLLI_R: _check_lolli_r,
    Rule.IMP_L: _check_imp_l,
    Rule.IMP_R: _check_imp_r,
    Rule.FORALL_L: _check_forall_l,
    Rule.FORALL_R: _check_forall_r,
    Rule.EXISTS_R: _check_exists_r,
    Rule.BANG_R: _check_bang_r,
    Rule.OPLUS_R1: _check_oplus_r,
    Rule.OPLUS_R2: _check_oplus_r,
    Rule.TENSOR_R: _check_tensor_r,
    Rule.BC_U: _check_bc,
    Rule.BC_B: _check_bc,
    Rule.BUILTIN: _check_builtin,
}
