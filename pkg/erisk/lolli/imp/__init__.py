"""A small imperative language with naturals, memory and while loops."""

from .ast import (
    Add, Assign, Deref, Gt, Num, Program, Seq, Sub, While,
    assign, deref, num, program_size, seq, subprograms, while_,
)
from .memory import Memory, format_memory, load_memory, parse_memory
from .oracle import Derivation, EvalResult, EvalRule, check_derivation, count_rules, eval_oracle
from .parser import PROGRAM_GRAMMAR, format_program, parse_program
from .programs import random_memory, random_program, run_sum, sum_loop, sum_program, swap_program

__all__ = [
    "Add", "Assign", "Deref", "Gt", "Num", "Program", "Seq", "Sub", "While",
    "assign", "deref", "num", "program_size", "seq", "subprograms", "while_",
    "Memory", "format_memory", "load_memory", "parse_memory",
    "Derivation", "EvalResult", "EvalRule", "check_derivation", "count_rules", "eval_oracle",
    "PROGRAM_GRAMMAR", "format_program", "parse_program",
    "random_memory", "random_program", "run_sum", "sum_loop", "sum_program", "swap_program",
]
