"""Queries that run a program through proof search, and reading their answers.

In ``discard`` mode the continuation is ``top`` and only the value comes
back.  In ``collect`` mode the continuation is
``m l0 ?V0 * (m l1 ?V1 * ... * top)`` over the chosen locations, so the
final memory is read off the substitution as well.

Usage::

    run = run_via_logic(swap_program(), Memory({0: 5, 1: 7, 2: 0}))
    run.value, dict(run.memory)     # 5, {0: 7, 1: 5, 2: 5}
"""

from __future__ import annotations

import logging
import time
from collections.abc import Iterable
from dataclasses import dataclass, field

from ..engine import SearchConfig, SearchResult, prove
from ..imp import Memory, Program
from ..kernel import ProofTree
from ..outcome import Outcome
from ..syntax import Atom, Formula, Tensor, Top, formula_to_term
from ..terms import NAT, Meta, Nat, Substitution, app
from .translate import cell, clause_labels, constant, gamma_clauses, translate_memory, translate_program

log = logging.getLogger("lolli.encoding")

QUERY_MODES = ("collect", "discard")


@dataclass(frozen=True, slots=True)
class Query:
    gamma: tuple[Formula, ...]
    delta: tuple[Formula, ...]
    goal: Atom
    value: Meta
    cells: tuple[tuple[int, Meta], ...] = ()
    mode: str = "collect"


def build_query(
    p: Program,
    m: Memory,
    mode: str = "collect",
    locations: Iterable[int] | None = None,
) -> Query:
    """The sequent whose proofs evaluate ``p`` in ``m``.

    ``locations`` restricts what collect mode reads back; it defaults to
    the whole domain of ``m``.
    """
    if mode not in QUERY_MODES:
        raise ValueError(f"Unknown query mode {mode!r}. Use one of: {', '.join(QUERY_MODES)}")
    value = Meta("V", NAT)
    cells: tuple[tuple[int, Meta], ...] = ()
    continuation: Formula = Top()
    if mode == "collect":
        locs = sorted(set(m if locations is None else locations))
        cells = tuple((loc, Meta(f"V{loc}", NAT)) for loc in locs)
        for loc, meta in reversed(cells):
            continuation = Tensor(cell(loc, meta), continuation)
    goal = Atom(app(constant("e"), translate_program(p), value, formula_to_term(continuation)))
    return Query(gamma_clauses(), translate_memory(m), goal, value, cells, mode)


@dataclass(frozen=True, slots=True)
class LogicRun:
    outcome: Outcome
    value: int | None = None
    memory: Memory | None = None
    proof: ProofTree | None = None
    search: SearchResult | None = None
    elapsed_ms: float = field(default=0.0, compare=False)

    def __bool__(self) -> bool:
        return self.outcome is Outcome.OK


def run_via_logic(
    p: Program,
    m: Memory,
    cfg: SearchConfig | None = None,
    mode: str = "collect",
    locations: Iterable[int] | None = None,
) -> LogicRun:
    """Evaluate ``p`` by proving its query.  A stuck program has no proof."""
    start = time.perf_counter()
    query = build_query(p, m, mode, locations)
    result = prove(query.gamma, query.delta, query.goal, cfg, labels=clause_labels())
    elapsed = (time.perf_counter() - start) * 1000
    if not result:
        log.debug("logic run %s, completed in %.3fms", result.outcome.value, elapsed)
        return LogicRun(result.outcome, search=result, elapsed_ms=elapsed)
    subst = result.substitution or Substitution()
    value = _natural(subst, query.value)
    memory = Memory({loc: _natural(subst, meta) for loc, meta in query.cells}) if mode == "collect" else None
    log.debug("logic run with %d BC nodes completed in %.3fms", result.bc_nodes, elapsed)
    return LogicRun(Outcome.OK, value, memory, result.proof, result, elapsed)


def _natural(subst: Substitution, meta: Meta) -> int:
    t = subst.apply(meta)
    if not isinstance(t, Nat):
        raise ValueError(f"answer ?{meta.name} is not a numeral: {t!r}")
    return t.value
