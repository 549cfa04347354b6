"""Sample programs used by the tests and the ``compare`` command.

``sum_program(n)`` leaves ``0 + 1 + ... + n`` in location 0 and zero in
location 1.
"""

from __future__ import annotations

import random

from .ast import Add, Assign, Deref, Gt, Num, Program, Seq, Sub, assign, seq
from .memory import Memory
from .oracle import EvalResult, eval_oracle
from .parser import parse_program


def swap_program() -> Program:
    """Swap locations 0 and 1 using location 2 as scratch."""
    return parse_program("2 <- *0 ; (0 <- *1 ; 1 <- *2)")


def sum_loop() -> Program:
    return parse_program("while *1 > 0 do (0 <- *0 + *1 ; 1 <- *1 - 1)")


def sum_program(n: int) -> Program:
    if n < 0:
        raise ValueError(f"n must be a natural, got {n}")
    return seq(assign(0, 0), assign(1, n), sum_loop())


def run_sum(n: int, step_budget: int = 100_000) -> EvalResult:
    return eval_oracle(sum_program(n), Memory({0: 0, 1: 0}), step_budget)


def random_program(rng: random.Random, depth: int = 4, locations: int = 3) -> Program:
    """Random loop-free program addressing locations ``0 .. locations``.

    Location ``locations`` lies outside a memory from :func:`random_memory`
    with the same ``locations``, so some programs get stuck on it.
    """
    if depth <= 0:
        return _leaf(rng, locations)
    kind = rng.choice(("leaf", "add", "sub", "gt", "deref", "assign", "seq"))
    sub = depth - 1
    if kind == "leaf":
        return _leaf(rng, locations)
    if kind == "add":
        return Add(random_program(rng, sub, locations), random_program(rng, sub, locations))
    if kind == "sub":
        return Sub(random_program(rng, sub, locations), random_program(rng, sub, locations))
    if kind == "gt":
        return Gt(random_program(rng, sub, locations), random_program(rng, sub, locations))
    if kind == "deref":
        return Deref(Num(rng.randrange(locations + 1)))
    if kind == "assign":
        return Assign(Num(rng.randrange(locations + 1)), random_program(rng, sub, locations))
    return Seq(random_program(rng, sub, locations), random_program(rng, sub, locations))


def _leaf(rng: random.Random, locations: int) -> Program:
    if rng.random() < 0.5:
        return Num(rng.randrange(5))
    return Deref(Num(rng.randrange(locations + 1)))


def random_memory(rng: random.Random, locations: int = 3, values: int = 5) -> Memory:
    """Memory defining locations ``0 .. locations-1`` with values below ``values``."""
    return Memory({loc: rng.randrange(values) for loc in range(locations)})


