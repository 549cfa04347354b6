"""lolli: a linear logic programming workbench.

Usage::

    from lolli import Memory, parse_program, eval_oracle, run_via_logic

    swap = parse_program("2 <- *0 ; (0 <- *1 ; 1 <- *2)")
    memory = Memory({0: 5, 1: 7, 2: 0})

    direct = eval_oracle(swap, memory)
    logic = run_via_logic(swap, memory)
    assert (direct.value, direct.memory) == (logic.value, logic.memory)
"""

from .outcome import Outcome
from .terms import (
    IOTA, NAT, O, PROG,
    App, Bound, Const, Lam, Meta, Nat, Term, Var,
    Bindings, Substitution, app, arrow, unify,
)
from .syntax import (
    Atom, Bang, Builtin, BuiltinRel, Exists, Forall, Formula, Imp, Lolli, Oplus, Tensor, Top, With,
    classify, elaborate, format_formula, is_clause, is_goal, parse_formula, parse_term,
)
from .kernel import (
    CheckReport, ProofTree, Rule, Sequent,
    check_full, check_reduced, format_proof, is_coincided, is_simple, is_uniform,
    load_bundled, load_proof, nonuniformity_measure, parse_proof, search_full, write_proof,
)
from .normalize import STAGES, expand, normalize, to_coincided, to_reduced, to_simple, to_uniform, to_uniform_steps
from .engine import SearchConfig, SearchResult, prove
from .imp import (
    Derivation, EvalResult, EvalRule, Memory, Program,
    check_derivation, eval_oracle, format_program, parse_memory, parse_program,
)
from .encoding import (
    LogicRun, MimicryReport, Query,
    build_query, gamma_clauses, mimicry_report, run_via_logic, translate_memory, translate_program,
)
from .config import Settings, load_config, settings_from_config
from .report import RunReport
from .exc import (
    LolliError, ParseError, TermTypeError, UnboundNameError, FormulaError, ClassificationError,
    ProofError, NormalizationError, UnificationError, OutOfFragmentError, FlexibleGoalError,
    InstantiationError, EvaluationError, ConfigError,
)

__version__ = "0.1.0"

__all__ = [
    'Outcome',
    # Terms
    'IOTA', 'NAT', 'O', 'PROG',
    'App', 'Bound', 'Const', 'Lam', 'Meta', 'Nat', 'Term', 'Var',
    'Bindings', 'Substitution', 'app', 'arrow', 'unify',
    # Formulas
    'Atom', 'Bang', 'Builtin', 'BuiltinRel', 'Exists', 'Forall', 'Formula', 'Imp', 'Lolli',
    'Oplus', 'Tensor', 'Top', 'With',
    'classify', 'elaborate', 'format_formula', 'is_clause', 'is_goal', 'parse_formula', 'parse_term',
    # Proofs
    'CheckReport', 'ProofTree', 'Rule', 'Sequent',
    'check_full', 'check_reduced', 'format_proof', 'is_coincided', 'is_simple', 'is_uniform',
    'load_bundled', 'load_proof', 'nonuniformity_measure', 'parse_proof', 'search_full', 'write_proof',
    # Normalization
    'STAGES', 'expand', 'normalize', 'to_coincided', 'to_reduced', 'to_simple', 'to_uniform',
    'to_uniform_steps',
    # Engine
    'SearchConfig', 'SearchResult', 'prove',
    # Imperative language
    'Derivation', 'EvalResult', 'EvalRule', 'Memory', 'Program',
    'check_derivation', 'eval_oracle', 'format_program', 'parse_memory', 'parse_program',
    # Encoding
    'LogicRun', 'MimicryReport', 'Query',
    'build_query', 'gamma_clauses', 'mimicry_report', 'run_via_logic', 'translate_memory',
    'translate_program',
    # Config
    'Settings', 'load_config', 'settings_from_config', 'RunReport',
    # Exceptions
    'LolliError', 'ParseError', 'TermTypeError', 'UnboundNameError', 'FormulaError',
    'ClassificationError', 'ProofError', 'NormalizationError', 'UnificationError',
    'OutOfFragmentError', 'FlexibleGoalError', 'InstantiationError', 'EvaluationError',
    'ConfigError',
]
