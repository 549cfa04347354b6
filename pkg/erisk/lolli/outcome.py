"""Run outcomes shared by the engine, the oracle and the CLI."""

from __future__ import annotations

import enum


class Outcome(str, enum.Enum):
    OK = "ok"
    STUCK = "stuck"
    UNPROVABLE = "unprovable"
    BUDGET_EXHAUSTED = "budget_exhausted"

    # alias
    PROVED = "ok"
