"""Depth-limited proof search in the full calculus.

Meant for small propositional sequents: it produces the unrestricted,
often non-uniform proofs that the normalizer takes as input.  Quantified
formulas are not decomposed.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterator

from ..syntax import Atom, Bang, Imp, Lolli, Oplus, Tensor, Top, With
from .proof import ProofTree, Rule
from .sequent import Sequent, drop_index

log = logging.getLogger("lolli.kernel")

STRATEGIES = ("left-first", "right-first")


class _Exhausted(Exception):
    pass


def search_full(
    sequent: Sequent,
    max_depth: int = 8,
    strategy: str = "left-first",
    node_limit: int = 50_000,
) -> ProofTree | None:
    """Find a full-calculus proof of ``sequent`` or return None.

    ``left-first`` tries id, left rules and absorb before right rules,
    which yields non-uniform proofs; ``right-first`` prefers right rules.
    None also covers giving up after ``node_limit`` expansions.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}. Use one of: {', '.join(STRATEGIES)}")
    searcher = _Searcher(strategy == "left-first", node_limit)
    try:
        return searcher.prove(sequent.gamma, sequent.delta, sequent.goal, max_depth)
    except _Exhausted:
        log.debug("brute-force search gave up after %d expansions", node_limit)
        return None


def _key(gamma, delta, goal, depth):
    return frozenset(gamma), frozenset(Counter(delta).items()), goal, depth


def _splits(items: tuple) -> Iterator[tuple[tuple, tuple]]:
    """Distinct ways to split a multiset into (left, right)."""
    seen: set = set()
    n = len(items)
    for mask in range(1 << n):
        left = tuple(items[k] for k in range(n) if mask >> k & 1)
        right = tuple(items[k] for k in range(n) if not mask >> k & 1)
        key = frozenset(Counter(left).items())
        if key in seen:
            continue
        seen.add(key)
        yield left, right


class _Searcher:
    def __init__(self, left_first: bool, node_limit: int) -> None:
        self.left_first = left_first
        self.node_limit = node_limit
        self.expanded = 0
        self.failed: set = set()

    def prove(self, gamma, delta, goal, depth) -> ProofTree | None:
        key = _key(gamma, delta, goal, depth)
        if key in self.failed:
            return None
        self.expanded += 1
        if self.expanded > self.node_limit:
            raise _Exhausted
        conclusion = Sequent(tuple(gamma), tuple(delta), goal)
        if self.left_first:
            attempts = itertools.chain(self._left(conclusion, depth), self._right(conclusion, depth))
        else:
            attempts = itertools.chain(self._right(conclusion, depth), self._left(conclusion, depth))
        for proof in attempts:
            if proof is not None:
                return proof
        self.failed.add(key)
        return None

    # ── Left side: id, left rules, absorb ──────────────────────────

    def _left(self, s: Sequent, depth: int) -> Iterator[ProofTree | None]:
        gamma, delta, goal = s.gamma, s.delta, s.goal
        if len(delta) == 1 and isinstance(goal, Atom) and delta[0] == goal:
            yield ProofTree(Rule.ID, s, (), 0)
        if depth == 0:
            return
        seen: set = set()
        for p, f in enumerate(delta):
            if f in seen:
                continue
            seen.add(f)
            rest = drop_index(delta, p)
            if isinstance(f, With):
                for rule, part in ((Rule.WITH_L1, f.left), (Rule.WITH_L2, f.right)):
                    above = self.prove(gamma, rest + (part,), goal, depth - 1)
                    yield above and ProofTree(rule, s, (above,), p)
            elif isinstance(f, Lolli):
                for left_delta, right_delta in _splits(rest):
                    left = self.prove(gamma, left_delta, f.ante, depth - 1)
                    if left is None:
                        continue
                    right = self.prove(gamma, right_delta + (f.cons,), goal, depth - 1)
                    yield right and ProofTree(Rule.LOLLI_L, s, (left, right), p)
            elif isinstance(f, Imp):
                left = self.prove(gamma, (), f.ante, depth - 1)
                if left is not None:
                    right = self.prove(gamma, rest + (f.cons,), goal, depth - 1)
                    yield right and ProofTree(Rule.IMP_L, s, (left, right), p)
        for k, b in enumerate(gamma):
            above = self.prove(gamma, delta + (b,), goal, depth - 1)
            yield above and ProofTree(Rule.ABSORB, s, (above,), k)

    # ── Right rules ────────────────────────────────────────────────

    def _right(self, s: Sequent, depth: int) -> Iterator[ProofTree | None]:
        gamma, delta, goal = s.gamma, s.delta, s.goal
        if isinstance(goal, Top):
            yield ProofTree(Rule.TOP_R, s)
            return
        if depth == 0:
            return
        if isinstance(goal, With):
            left = self.prove(gamma, delta, goal.left, depth - 1)
            if left is not None:
                right = self.prove(gamma, delta, goal.right, depth - 1)
                yield right and ProofTree(Rule.WITH_R, s, (left, right))
        elif isinstance(goal, Tensor):
            for left_delta, right_delta in _splits(delta):
                left = self.prove(gamma, left_delta, goal.left, depth - 1)
                if left is None:
                    continue
                right = self.prove(gamma, right_delta, goal.right, depth - 1)
                yield right and ProofTree(Rule.TENSOR_R, s, (left, right))
        elif isinstance(goal, Lolli):
            above = self.prove(gamma, delta + (goal.ante,), goal.cons, depth - 1)
            yield above and ProofTree(Rule.LOLLI_R, s, (above,))
        elif isinstance(goal, Imp):
            new_gamma = gamma if goal.ante in gamma else gamma + (goal.ante,)
            above = self.prove(new_gamma, delta, goal.cons, depth - 1)
            yield above and ProofTree(Rule.IMP_R, s, (above,))
        elif isinstance(goal, Bang) and not delta:
            above = self.prove(gamma, (), goal.body, depth - 1)
            yield above and ProofTree(Rule.BANG_R, s, (above,))
        elif isinstance(goal, Oplus):
            for rule, part in ((Rule.OPLUS_R1, goal.left), (Rule.OPLUS_R2, goal.right)):
                above = self.prove(gamma, delta, part, depth - 1)
                yield above and ProofTree(rule, s, (above,))
