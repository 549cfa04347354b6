"""Reference interpreter following the big-step evaluation rules.

Every run builds the full derivation tree.  Evaluation uses an explicit
frame stack, so long-running loops do not hit the recursion limit.

Usage::

    result = eval_oracle(parse_program("1 <- *2"), Memory({1: 0, 2: 9}))
    result.value, dict(result.memory)       # 9, {1: 9, 2: 9}
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field

from ..outcome import Outcome
from .ast import Add, Assign, Deref, Gt, Num, Program, Seq, Sub, While, subprograms
from .memory import Memory

log = logging.getLogger("lolli.oracle")


class EvalRule(str, enum.Enum):
    NUM = "num"
    ADD = "add"
    SUB = "sub"
    GT_TRUE = "gtTrue"
    GT_FALSE = "gtFalse"
    DEREF = "deref"
    ASSIGN = "assign"
    SEQ = "seq"
    WHILE_FALSE = "whileFalse"
    WHILE_TRUE = "whileTrue"


@dataclass(frozen=True, slots=True, eq=False)
class Derivation:
    """``<program, memory_in>  evaluates to  (value, memory_out)`` with its premises."""

    rule: EvalRule
    program: Program
    memory_in: Memory
    value: int
    memory_out: Memory
    premises: tuple[Derivation, ...] = ()
    side: str | None = None

    def __repr__(self) -> str:
        return f"Derivation({self.rule.value}, value={self.value}, premises={len(self.premises)})"


@dataclass(frozen=True, slots=True)
class EvalResult:
    outcome: Outcome
    value: int | None = None
    memory: Memory | None = None
    derivation: Derivation | None = None
    steps: int = 0
    reason: str | None = None
    elapsed_ms: float = field(default=0.0, compare=False)

    def __bool__(self) -> bool:
        return self.outcome is Outcome.OK


class _Stuck(Exception):
    pass


@dataclass(slots=True)
class _Frame:
    program: Program
    memory: Memory
    premises: list[Derivation] = field(default_factory=list)


def eval_oracle(p: Program, m: Memory, step_budget: int = 100_000) -> EvalResult:
    """Evaluate ``p`` in ``m``; ``step_budget`` caps the number of derivation nodes."""
    start = time.perf_counter()
    stack = [_Frame(p, m)]
    done: Derivation | None = None
    steps = 1
    try:
        while stack:
            frame = stack[-1]
            if done is not None:
                frame.premises.append(done)
                done = None
            nxt = _advance(frame)
            if isinstance(nxt, Derivation):
                stack.pop()
                done = nxt
                continue
            steps += 1
            if steps > step_budget:
                log.warning("evaluation budget of %d derivation nodes exhausted", step_budget)
                return EvalResult(Outcome.BUDGET_EXHAUSTED, steps=steps - 1, elapsed_ms=_since(start))
            stack.append(_Frame(nxt[0], nxt[1]))
    except _Stuck as exc:
        log.debug("evaluation stuck: %s", exc)
        return EvalResult(Outcome.STUCK, steps=steps, reason=str(exc), elapsed_ms=_since(start))
    elapsed = _since(start)
    log.debug("evaluation of %d derivation nodes completed in %.3fms", steps, elapsed)
    return EvalResult(Outcome.OK, done.value, done.memory_out, done, steps, None, elapsed)  # type: ignore[union-attr]


def _since(start: float) -> float:
    return (time.perf_counter() - start) * 1000


def _advance(frame: _Frame) -> Derivation | tuple[Program, Memory]:
    """Next child to evaluate, or the finished derivation of ``frame``."""
    p, m, done = frame.program, frame.memory, frame.premises
    k = len(done)
    out = done[-1].memory_out if done else m

    def finish(rule: EvalRule, value: int, memory: Memory, side: str | None = None) -> Derivation:
        return Derivation(rule, p, m, value, memory, tuple(done), side)

    if isinstance(p, Num):
        return finish(EvalRule.NUM, p.value, m)
    if isinstance(p, (Add, Sub, Gt)):
        if k < 2:
            return (subprograms(p)[k], out)
        n1, n2 = done[0].value, done[1].value
        if isinstance(p, Add):
            return finish(EvalRule.ADD, n1 + n2, out, f"{n1 + n2} = {n1} + {n2}")
        if isinstance(p, Sub):
            return finish(EvalRule.SUB, max(0, n1 - n2), out, f"{max(0, n1 - n2)} = {n1} - {n2}")
        if n1 > n2:
            return finish(EvalRule.GT_TRUE, 1, out, f"{n1} > {n2}")
        return finish(EvalRule.GT_FALSE, 0, out, f"{n1} <= {n2}")
    if isinstance(p, Deref):
        if k == 0:
            return (p.address, m)
        loc = done[0].value
        if loc not in out:
            raise _Stuck(f"read of undefined location {loc}")
        return finish(EvalRule.DEREF, out[loc], out, f"M({loc}) = {out[loc]}")
    if isinstance(p, Assign):
        if k < 2:
            return (subprograms(p)[k], out)
        loc, value = done[0].value, done[1].value
        if loc not in out:
            raise _Stuck(f"write to undefined location {loc}")
        return finish(EvalRule.ASSIGN, value, out.update(loc, value), f"M({loc}) = {out[loc]}")
    if isinstance(p, Seq):
        if k < 2:
            return (subprograms(p)[k], out)
        return finish(EvalRule.SEQ, done[1].value, out)
    if isinstance(p, While):
        if k == 0:
            return (p.guard, m)
        if k == 1:
            if done[0].value == 0:
                return finish(EvalRule.WHILE_FALSE, 0, out)
            return (p.body, out)
        if k == 2:
            return (p, out)
        return finish(EvalRule.WHILE_TRUE, done[2].value, out)
    raise TypeError(f"not a program: {p!r}")


# ── Derivation checking ──────────────────────────────────────────────

_ARITY = {
    EvalRule.NUM: 0, EvalRule.ADD: 2, EvalRule.SUB: 2, EvalRule.GT_TRUE: 2, EvalRule.GT_FALSE: 2,
    EvalRule.DEREF: 1, EvalRule.ASSIGN: 2, EvalRule.SEQ: 2, EvalRule.WHILE_FALSE: 1,
    EvalRule.WHILE_TRUE: 3,
}

_PROGRAM_FOR = {
    EvalRule.NUM: Num, EvalRule.ADD: Add, EvalRule.SUB: Sub, EvalRule.GT_TRUE: Gt,
    EvalRule.GT_FALSE: Gt, EvalRule.DEREF: Deref, EvalRule.ASSIGN: Assign, EvalRule.SEQ: Seq,
    EvalRule.WHILE_FALSE: While, EvalRule.WHILE_TRUE: While,
}


def check_derivation(d: Derivation) -> list[str]:
    """Problems found re-checking every node against its rule; empty when valid."""
    problems: list[str] = []
    stack = [d]
    while stack:
        node = stack.pop()
        problem = _check_node(node)
        if problem is not None:
            problems.append(f"{node.rule.value}: {problem}")
        stack.extend(reversed(node.premises))
    return problems


def _check_node(d: Derivation) -> str | None:
    p, prem = d.program, d.premises
    if not isinstance(p, _PROGRAM_FOR[d.rule]):
        return f"rule does not apply to {type(p).__name__}"
    if len(prem) != _ARITY[d.rule]:
        return f"expected {_ARITY[d.rule]} premises, got {len(prem)}"
    expected = subprograms(p)
    if d.rule is EvalRule.WHILE_TRUE:
        expected = expected + (p,)
    for child, q in zip(prem, expected):
        if child.program != q:
            return "premise evaluates the wrong subprogram"
    memory = d.memory_in
    for child in prem:
        if child.memory_in != memory:
            return "premise memories are not threaded left to right"
        memory = child.memory_out
    values = [q.value for q in prem]
    rule = d.rule
    if rule is EvalRule.NUM:
        ok = d.value == p.value and d.memory_out == d.memory_in
    elif rule is EvalRule.ADD:
        ok = d.value == values[0] + values[1] and d.memory_out == memory
    elif rule is EvalRule.SUB:
        ok = d.value == max(0, values[0] - values[1]) and d.memory_out == memory
    elif rule is EvalRule.GT_TRUE:
        ok = values[0] > values[1] and d.value == 1 and d.memory_out == memory
    elif rule is EvalRule.GT_FALSE:
        ok = values[0] <= values[1] and d.value == 0 and d.memory_out == memory
    elif rule is EvalRule.DEREF:
        ok = values[0] in memory and d.value == memory[values[0]] and d.memory_out == memory
    elif rule is EvalRule.ASSIGN:
        ok = values[0] in memory and d.value == values[1] and d.memory_out == memory.update(values[0], values[1])
    elif rule is EvalRule.SEQ:
        ok = d.value == values[1] and d.memory_out == memory
    elif rule is EvalRule.WHILE_FALSE:
        ok = values[0] == 0 and d.value == 0 and d.memory_out == memory
    else:
        ok = values[0] != 0 and d.value == values[2] and d.memory_out == memory
    return None if ok else "conclusion does not follow from the premises"


def count_rules(d: Derivation) -> dict[EvalRule, int]:
    counts: dict[EvalRule, int] = {}
    stack = [d]
    while stack:
        node = stack.pop()
        counts[node.rule] = counts.get(node.rule, 0) + 1
        stack.extend(node.premises)
    return counts
