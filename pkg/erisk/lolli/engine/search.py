"""Backchaining proof search for the reduced system.

The search is an iterative machine: a linked continuation of tasks, a
stack of choice points and a trailed binding store.  Bounded resources are
threaded through the tasks (input/output style), so ``*`` and the
obligations of a clause never guess a context split; ``top`` sets a slack
flag that lets its subproof absorb whatever is left over.

Usage::

    from lolli.engine import prove, SearchConfig

    result = prove(gamma, delta, goal, SearchConfig(budget=10_000))
    if result:
        print(format_proof(result.proof))

The returned proof is rebuilt from the log of the successful branch; the
bounded context of each node is computed afterwards from what its
subproof consumed.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from ..exc import FlexibleGoalError, ProofError
from ..kernel import BC_RULES, ProofTree, Rule, Sequent
from ..outcome import Outcome
from ..syntax import (
    Atom, Bang, Builtin, ClauseTriple, Exists, Forall, Formula, Imp, Lolli, MetaSupply, Oplus,
    Tensor, Top, With, apply_formula, elaboration_paths, formula_metas, instantiate, map_terms,
    require_clause, require_goal,
)
from ..terms import SUCC, Bindings, Const, Meta, Nat, Substitution, Term, head, map_leaves, spine
from .builtins import decide_builtin
from .trace import TraceEvent, bc_events

log = logging.getLogger("lolli.engine")

CLAUSE_ORDERS = ("as-written",)


@dataclass(frozen=True, slots=True)
class SearchConfig:
    """``budget`` caps the number of backchaining steps taken, backtracked ones included."""

    budget: int = 100_000
    trace: bool = False
    clause_order: str = "as-written"

    def __post_init__(self) -> None:
        if self.budget < 1:
            raise ValueError(f"budget must be at least 1, got {self.budget}")
        if self.clause_order not in CLAUSE_ORDERS:
            raise ValueError(f"Unknown clause order {self.clause_order!r}. Use one of: {', '.join(CLAUSE_ORDERS)}")


@dataclass(frozen=True, slots=True)
class ResourceState:
    """Bounded formulas still available, by entry number, and the slack flag set by ``top``."""

    available: frozenset[int]
    slack: bool = False


@dataclass(frozen=True, slots=True)
class SearchResult:
    outcome: Outcome
    proof: ProofTree | None = None
    substitution: Substitution | None = None
    bc_nodes: int = 0
    steps: int = 0
    trace: tuple[TraceEvent, ...] = ()
    elapsed_ms: float = field(default=0.0, compare=False)

    def __bool__(self) -> bool:
        return self.outcome is Outcome.OK


def prove(
    gamma: Sequence[Formula],
    delta: Sequence[Formula],
    goal: Formula,
    cfg: SearchConfig | None = None,
    labels: Mapping[Formula, str] | None = None,
) -> SearchResult:
    """Search for a reduced proof of ``gamma ; delta |- goal``.

    Depth-first with chronological backtracking.  Atomic goals try the
    bounded context first, then the unbounded one, each in the order
    written.  ``labels`` names clauses in trace events.

    Raises :class:`ClassificationError` for an ill-formed query and
    :class:`FlexibleGoalError` when an atomic goal has a metavariable head.
    """
    cfg = cfg or SearchConfig()
    for f in gamma:
        require_clause(f)
    for f in delta:
        require_clause(f)
    require_goal(goal)
    start = time.perf_counter()
    log.debug("search started: %d unbounded, %d bounded clauses", len(gamma), len(delta))
    machine = _Machine(tuple(gamma), tuple(delta), goal, cfg)
    outcome = machine.run()
    elapsed = (time.perf_counter() - start) * 1000
    if outcome is not Outcome.OK:
        if outcome is Outcome.BUDGET_EXHAUSTED:
            log.warning("search budget of %d backchaining steps exhausted", cfg.budget)
        log.debug("search %s after %d steps, completed in %.3fms", outcome.value, machine.bc_steps, elapsed)
        return SearchResult(outcome, steps=machine.bc_steps, elapsed_ms=elapsed)
    proof = machine.assemble()
    events = bc_events(proof, labels, machine.unifiers() if cfg.trace else None)
    log.debug("search proved goal with %d BC nodes, completed in %.3fms", len(events), elapsed)
    return SearchResult(
        Outcome.OK,
        proof,
        machine.store.snapshot(),
        len(events),
        machine.bc_steps,
        events if cfg.trace else (),
        elapsed,
    )


# ── Machine ──────────────────────────────────────────────────────────


class _BudgetExhausted(Exception):
    pass


@dataclass(slots=True)
class _Record:
    """One node of the branch being explored, in preorder."""

    rule: Rule
    gamma: tuple[Formula, ...]
    goal: Formula
    arity: int = 0
    principal: int | None = None
    entry: int | None = None
    hypothesis: int | None = None
    witness: Term | None = None
    triple: ClauseTriple | None = None
    bound: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class _Template:
    triple: ClauseTriple
    metas: tuple[Meta, ...]


@dataclass(slots=True)
class _ChoicePoint:
    alternatives: Iterator[object]
    state: ResourceState
    mark: int
    log_size: int
    entries_size: int


# Continuations are immutable cons cells ``(task, rest)``; tasks are tuples.
Cont = tuple | None
_FAIL = object()


def _functor(t: Term) -> object:
    if isinstance(t, Nat):
        return "s" if t.value else "z"
    h = head(t)
    if isinstance(h, Const):
        return "s" if h == SUCC else h.name
    return None


def _may_match(pattern: Term, goal: Term, store: Bindings) -> bool:
    """Cheap rigid-head test before renaming a clause template."""
    h1, args1 = spine(pattern)
    h2, args2 = spine(goal)
    if h1 != h2 or len(args1) != len(args2):
        return False
    for a, b in zip(args1, args2):
        fa, fb = _functor(a), _functor(store.walk(b))
        if fa is not None and fb is not None and fa != fb:
            return False
    return True


class _Machine:
    def __init__(self, gamma: tuple[Formula, ...], delta: tuple[Formula, ...], goal: Formula, cfg: SearchConfig) -> None:
        self.cfg = cfg
        self.store = Bindings()
        self.level = 0
        self.counter = itertools.count(1)
        # Query metavariables must not capture eigenvariables made during search.
        scoped = {name: Meta(name, None, 1) for f in (*gamma, *delta, goal) for name in formula_metas(f)}
        self.gamma = tuple(self._rename(f, scoped) for f in gamma)
        self.entries: list[Formula] = [self._rename(f, scoped) for f in delta]
        self.query_size = len(delta)
        self.goal = self._rename(goal, scoped)
        self.state = ResourceState(frozenset(range(len(delta))))
        self.log: list[_Record] = []
        self.choices: list[_ChoicePoint] = []
        self.templates: dict[Formula, list[_Template]] = {}
        self.bc_steps = 0

    @staticmethod
    def _rename(f: Formula, mapping: Mapping[str, Meta]) -> Formula:
        if not mapping:
            return f

        def leaf(t: Term) -> Term:
            return mapping.get(t.name, t) if isinstance(t, Meta) else t

        return map_terms(f, lambda term, depth: map_leaves(term, leaf))

    # ── Main loop ──────────────────────────────────────────────────

    def run(self) -> Outcome:
        cont: Cont = (("prove", self.goal, self.gamma), (("final",), None))
        try:
            while True:
                if cont is None:
                    return Outcome.OK
                task, rest = cont
                cont = self._step(task, rest)
                if cont is _FAIL:
                    cont = self._backtrack()
                    if cont is _FAIL:
                        return Outcome.UNPROVABLE
        except _BudgetExhausted:
            return Outcome.BUDGET_EXHAUSTED

    def _backtrack(self) -> Cont | object:
        while self.choices:
            cp = self.choices[-1]
            self.store.undo(cp.mark)
            del self.log[cp.log_size:]
            del self.entries[cp.entries_size:]
            self.state = cp.state
            nxt = next(cp.alternatives, _FAIL)
            if nxt is not _FAIL:
                return nxt
            self.choices.pop()
        return _FAIL

    def _choose(self, alternatives: Iterator[object]) -> Cont | object:
        self.choices.append(
            _ChoicePoint(alternatives, self.state, self.store.mark(), len(self.log), len(self.entries))
        )
        return self._backtrack()

    def _record(self, rule: Rule, gamma: tuple[Formula, ...], goal: Formula, arity: int = 0, **kw: object) -> None:
        self.log.append(_Record(rule, gamma, goal, arity, **kw))  # type: ignore[arg-type]

    # ── Tasks ──────────────────────────────────────────────────────

    def _step(self, task: tuple, rest: Cont) -> Cont | object:
        kind = task[0]
        state = self.state
        if kind == "prove":
            return self._prove(apply_formula(task[1], self.store), task[2], rest)
        if kind == "isolated":
            self.state = ResourceState(frozenset())
            return (("prove", task[1], task[2]), (("restore", state), rest))
        if kind == "restore":
            self.state = task[1]
            return rest
        if kind == "lolli_exit":
            _, h, outer_slack = task
            if h in state.available and not state.slack:
                return _FAIL
            self.state = ResourceState(state.available - {h}, outer_slack or state.slack)
            return rest
        if kind == "with_mid":
            _, goal, gamma, entry, outer_slack = task
            self.state = ResourceState(entry.available)
            return (("prove", goal, gamma), (("with_join", state, outer_slack), rest))
        if kind == "with_join":
            return self._with_join(task[1], task[2], rest)
        if kind == "final":
            return rest if not state.available or state.slack else _FAIL
        raise ProofError(f"unknown search task {kind!r}")

    def _with_join(self, first: ResourceState, outer_slack: bool, rest: Cont) -> Cont | object:
        second = self.state
        o1, o2 = first.available, second.available
        if first.slack and second.slack:
            available, slack = o1 & o2, True
        elif first.slack:
            if not o2 <= o1:
                return _FAIL
            available, slack = o2, False
        elif second.slack:
            if not o1 <= o2:
                return _FAIL
            available, slack = o1, False
        else:
            if o1 != o2:
                return _FAIL
            available, slack = o1, False
        self.state = ResourceState(available, outer_slack or slack)
        return rest

    def _prove(self, goal: Formula, gamma: tuple[Formula, ...], rest: Cont) -> Cont | object:
        state = self.state
        if isinstance(goal, Atom):
            h, _ = spine(goal.term)
            if isinstance(h, Meta):
                raise FlexibleGoalError(f"atomic goal with metavariable head ?{h.name}")
            return self._choose(self._atom_alternatives(goal, gamma, rest))
        if isinstance(goal, Builtin):
            self._record(Rule.BUILTIN, gamma, goal)
            return rest if decide_builtin(goal, self.store) else _FAIL
        if isinstance(goal, Top):
            self._record(Rule.TOP_R, gamma, goal)
            self.state = ResourceState(state.available, True)
            return rest
        if isinstance(goal, Tensor):
            self._record(Rule.TENSOR_R, gamma, goal, 2)
            return (("prove", goal.left, gamma), (("prove", goal.right, gamma), rest))
        if isinstance(goal, With):
            self._record(Rule.WITH_R, gamma, goal, 2)
            self.state = ResourceState(state.available)
            nxt = ("with_mid", goal.right, gamma, state, state.slack)
            return (("prove", goal.left, gamma), (nxt, rest))
        if isinstance(goal, Lolli):
            h = len(self.entries)
            self.entries.append(goal.ante)
            self._record(Rule.LOLLI_R, gamma, goal, 1, hypothesis=h)
            self.state = ResourceState(state.available | {h})
            return (("prove", goal.cons, gamma), (("lolli_exit", h, state.slack), rest))
        if isinstance(goal, Imp):
            self._record(Rule.IMP_R, gamma, goal, 1)
            extended = gamma if goal.ante in gamma else gamma + (goal.ante,)
            return (("prove", goal.cons, extended), rest)
        if isinstance(goal, Forall):
            self.level += 1
            eigen = Const(f"{goal.hint}_{self.level}", goal.type, scope=self.level)
            self._record(Rule.FORALL_R, gamma, goal, 1, witness=eigen)
            return (("prove", instantiate(goal.body, eigen), gamma), rest)
        if isinstance(goal, Exists):
            meta = self._fresh(goal.hint, goal.type)
            self._record(Rule.EXISTS_R, gamma, goal, 1, witness=meta)
            return (("prove", instantiate(goal.body, meta), gamma), rest)
        if isinstance(goal, Bang):
            self._record(Rule.BANG_R, gamma, goal, 1)
            return (("isolated", goal.body, gamma), rest)
        if isinstance(goal, Oplus):
            return self._choose(self._oplus_alternatives(goal, gamma, rest))
        raise ProofError(f"cannot search for goal {goal!r}")

    def _fresh(self, hint: str, type: object) -> Meta:
        return Meta(f"{hint}_{next(self.counter)}", type, self.level + 1)  # type: ignore[arg-type]

    # ── Alternatives ───────────────────────────────────────────────

    def _oplus_alternatives(self, goal: Oplus, gamma: tuple[Formula, ...], rest: Cont) -> Iterator[Cont]:
        for rule, part in ((Rule.OPLUS_R1, goal.left), (Rule.OPLUS_R2, goal.right)):
            self._record(rule, gamma, goal, 1)
            yield (("prove", part, gamma), rest)

    def _atom_alternatives(self, goal: Atom, gamma: tuple[Formula, ...], rest: Cont) -> Iterator[Cont]:
        available = self.state.available
        for e in sorted(available):
            f = self.entries[e]
            if isinstance(f, Atom):
                if self.store.unify(f.term, goal.term):
                    self.state = ResourceState(available - {e}, self.state.slack)
                    self._record(Rule.ID, gamma, goal, entry=e)
                    yield rest
                continue
            for triple, bound in self._triples(f, goal):
                self.state = ResourceState(available - {e}, self.state.slack)
                self._record(
                    Rule.BC_B, gamma, goal, len(triple.unbounded) + len(triple.bounded), entry=e, triple=triple, bound=bound,
                )
                yield self._obligations(triple, gamma, rest)
        for k, f in enumerate(gamma):
            for triple, bound in self._triples(f, goal):
                self._record(
                    Rule.BC_U, gamma, goal, len(triple.unbounded) + len(triple.bounded), principal=k, triple=triple, bound=bound,
                )
                yield self._obligations(triple, gamma, rest)

    def _triples(self, clause: Formula, goal: Atom) -> Iterator[tuple[ClauseTriple, tuple[str, ...]]]:
        """Fresh triples of ``clause`` whose head unifies with ``goal``, with the names the match bound."""
        for template in self._templates(clause):
            if not _may_match(template.triple.head.term, goal.term, self.store):
                continue
            triple = self._instantiate(template)
            mark = self.store.mark()
            if self.store.unify(triple.head.term, goal.term):
                self.bc_steps += 1
                if self.bc_steps > self.cfg.budget:
                    raise _BudgetExhausted
                yield triple, self.store.bound_since(mark)

    def _templates(self, clause: Formula) -> list[_Template]:
        found = self.templates.get(clause)
        if found is None:
            found = []
            for triple, steps in elaboration_paths(clause, MetaSupply("_t")):
                metas = tuple(step.detail for step in steps if step.kind == "forall")
                found.append(_Template(triple, metas))  # type: ignore[arg-type]
            self.templates[clause] = found
        return found

    def _instantiate(self, template: _Template) -> ClauseTriple:
        if not template.metas:
            return template.triple
        mapping = {m.name: self._fresh(m.name, m.type) for m in template.metas}
        return template.triple.map(lambda f: self._rename(f, mapping))

    @staticmethod
    def _obligations(triple: ClauseTriple, gamma: tuple[Formula, ...], rest: Cont) -> Cont:
        cont = rest
        for g in reversed(triple.bounded):
            cont = (("prove", g, gamma), cont)
        for g in reversed(triple.unbounded):
            cont = (("isolated", g, gamma), cont)
        return cont

    # ── Proof reconstruction ───────────────────────────────────────

    def assemble(self) -> ProofTree:
        records = self.log
        n = len(records)
        children: list[list[int]] = [[] for _ in range(n)]
        open_nodes: list[list[int]] = []
        for i, r in enumerate(records):
            if open_nodes:
                parent = open_nodes[-1]
                children[parent[0]].append(i)
                parent[1] -= 1
                if parent[1] == 0:
                    open_nodes.pop()
            if r.arity:
                open_nodes.append([i, r.arity])
        if open_nodes:
            raise ProofError("search log ended with open proof nodes")

        used: list[frozenset[int]] = [frozenset()] * n
        absorbs = [False] * n
        for i in range(n - 1, -1, -1):
            used[i], absorbs[i] = self._usage(records[i], children[i], used, absorbs)

        delta: list[frozenset[int]] = [frozenset()] * n
        delta[0] = frozenset(range(self.query_size))
        for i in range(n):
            self._distribute(records[i], children[i], delta[i], used, absorbs, delta)

        memo: dict[int, Formula] = {}

        def final(f: Formula) -> Formula:
            key = id(f)
            if key not in memo:
                memo[key] = apply_formula(f, self.store)
            return memo[key]

        built: list[ProofTree] = []
        for i in range(n - 1, -1, -1):
            r = records[i]
            entries = tuple(sorted(delta[i]))
            premises = tuple(built.pop() for _ in children[i])
            principal = r.principal
            if r.rule in (Rule.ID, Rule.BC_B):
                principal = entries.index(r.entry)  # type: ignore[arg-type]
            conclusion = Sequent(
                tuple(final(f) for f in r.gamma),
                tuple(final(self.entries[e]) for e in entries),
                final(r.goal),
            )
            witness = self.store.apply(r.witness) if r.witness is not None else None
            triple = r.triple.map(final) if r.triple is not None else None
            built.append(ProofTree(r.rule, conclusion, premises, principal, witness, triple))
        return built[0]

    def unifiers(self) -> tuple[Substitution, ...]:
        """What each BC step's head match bound, resolved against the final store, in proof order."""
        return tuple(
            Substitution({name: self.store.apply(Meta(name)) for name in r.bound})
            for r in self.log
            if r.rule in BC_RULES
        )

    @staticmethod
    def _usage(
        r: _Record, kids: list[int], used: list[frozenset[int]], absorbs: list[bool]
    ) -> tuple[frozenset[int], bool]:
        if r.rule is Rule.ID:
            return frozenset({r.entry}), False  # type: ignore[arg-type]
        if r.rule is Rule.TOP_R:
            return frozenset(), True
        if r.rule in (Rule.BUILTIN, Rule.BANG_R):
            return frozenset(), False
        if r.rule in BC_RULES:
            bounded = kids[len(r.triple.unbounded):]  # type: ignore[union-attr]
            total = frozenset().union(*(used[k] for k in bounded))
            if r.rule is Rule.BC_B:
                total |= {r.entry}  # type: ignore[arg-type]
            return total, any(absorbs[k] for k in bounded)
        if r.rule is Rule.LOLLI_R:
            (k,) = kids
            return used[k] - {r.hypothesis}, absorbs[k]  # type: ignore[arg-type]
        total = frozenset().union(*(used[k] for k in kids))
        if r.rule is Rule.WITH_R:
            return total, all(absorbs[k] for k in kids)
        return total, any(absorbs[k] for k in kids)

    @staticmethod
    def _distribute(
        r: _Record,
        kids: list[int],
        here: frozenset[int],
        used: list[frozenset[int]],
        absorbs: list[bool],
        delta: list[frozenset[int]],
    ) -> None:
        if not kids:
            return
        if r.rule is Rule.BANG_R:
            delta[kids[0]] = frozenset()
            return
        if r.rule is Rule.WITH_R:
            for k in kids:
                delta[k] = here
            return
        if r.rule is Rule.LOLLI_R:
            delta[kids[0]] = here | {r.hypothesis}  # type: ignore[arg-type]
            return
        shared = kids
        if r.rule in BC_RULES:
            n_unb = len(r.triple.unbounded)  # type: ignore[union-attr]
            for k in kids[:n_unb]:
                delta[k] = frozenset()
            shared = kids[n_unb:]
            if r.rule is Rule.BC_B:
                here = here - {r.entry}  # type: ignore[arg-type]
        extras = here - frozenset().union(*(used[k] for k in shared))
        for k in shared:
            delta[k] = used[k]
        if extras:
            target = next((k for k in shared if absorbs[k]), None)
            if target is None:
                raise ProofError("leftover bounded formulas with no top to absorb them")
            delta[target] = used[target] | extras
