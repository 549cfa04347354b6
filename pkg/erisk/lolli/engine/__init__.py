"""Backchaining proof search with linear resource threading."""

from ..outcome import Outcome
from ..terms import Substitution, unify
from .builtins import decide_builtin, solve_builtin
from .search import CLAUSE_ORDERS, ResourceState, SearchConfig, SearchResult, prove
from .trace import TraceEvent, bc_events, clause_label, format_trace

__all__ = [
    "Outcome", "Substitution", "unify",
    "decide_builtin", "solve_builtin",
    "CLAUSE_ORDERS", "ResourceState", "SearchConfig", "SearchResult", "prove",
    "TraceEvent", "bc_events", "clause_label", "format_trace",
]
