"""The imperative language encoded in Lolli: terms, clauses, queries and mimicry."""

from .translate import (
    CLAUSE_TEXTS, SIGNATURE,
    cell, clause, clause_labels, constant, gamma_clauses, read_memory, translate_memory,
    translate_program,
)
from .query import QUERY_MODES, LogicRun, Query, build_query, run_via_logic
from .mimicry import CLAUSE_FOR_RULE, MimicryReport, MimicryRow, bc_counts, format_mimicry, mimicry_report

__all__ = [
    "CLAUSE_TEXTS", "SIGNATURE",
    "cell", "clause", "clause_labels", "constant", "gamma_clauses", "read_memory",
    "translate_memory", "translate_program",
    "QUERY_MODES", "LogicRun", "Query", "build_query", "run_via_logic",
    "CLAUSE_FOR_RULE", "MimicryReport", "MimicryRow", "bc_counts", "format_mimicry", "mimicry_report",
]
