"""Concrete syntax of the imperative language.

Tightest to loosest: ``*e`` (deref), ``+`` and ``-`` (left-assoc), ``>``,
``<-`` (assign, right-assoc), ``;`` (right-assoc).  ``while g do b`` may
only end a sequence and its body extends as far right as possible;
parenthesise to put it elsewhere.  ``#`` starts a comment.

Usage::

    swap = parse_program("2 <- *0 ; (0 <- *1 ; 1 <- *2)")
    format_program(swap)        # '2 <- *0 ; 0 <- *1 ; 1 <- *2'
"""

from __future__ import annotations

import functools

from lark import Lark, Token, Transformer, v_args

from ..syntax.parser import run_parser
from .ast import Add, Assign, Deref, Gt, Num, Program, Seq, Sub, While

PROGRAM_GRAMMAR = r"""
?start: seq

?seq: stmt ";" seq             -> seq
    | stmt
    | "while" assign "do" seq  -> while_

?stmt: assign

?assign: cmp "<-" assign       -> assign
       | cmp

?cmp: cmp ">" sum              -> gt
    | sum

?sum: sum "+" unary            -> add
    | sum "-" unary            -> sub
    | unary

?unary: "*" unary              -> deref
      | atom

?atom: INT                     -> num
     | "(" seq ")"

%import common.INT
%import common.WS
%import common.SH_COMMENT
%ignore WS
%ignore SH_COMMENT
"""


@v_args(inline=True)
class ProgramBuilder(Transformer):
    def num(self, tok: Token) -> Program:
        return Num(int(tok))

    def deref(self, address: Program) -> Program:
        return Deref(address)

    def add(self, left: Program, right: Program) -> Program:
        return Add(left, right)

    def sub(self, left: Program, right: Program) -> Program:
        return Sub(left, right)

    def gt(self, left: Program, right: Program) -> Program:
        return Gt(left, right)

    def assign(self, target: Program, source: Program) -> Program:
        return Assign(target, source)

    def seq(self, first: Program, second: Program) -> Program:
        return Seq(first, second)

    def while_(self, guard: Program, body: Program) -> Program:
        return While(guard, body)


@functools.lru_cache(maxsize=None)
def _program_parser() -> Lark:
    return Lark(PROGRAM_GRAMMAR, start="start", parser="lalr", transformer=ProgramBuilder())


def parse_program(text: str) -> Program:
    """Parse program text; raises :class:`ParseError` with line and column."""
    return run_parser(_program_parser(), text)


# ── Printing ─────────────────────────────────────────────────────────

_SEQ, _ASSIGN, _CMP, _SUM, _UNARY = range(5)


def format_program(p: Program) -> str:
    """Shortest text that parses back to ``p``."""
    return _fmt(p, _SEQ)


def _paren(text: str, level: int, context: int) -> str:
    return f"({text})" if context > level else text


def _fmt(p: Program, context: int) -> str:
    if isinstance(p, Num):
        return str(p.value)
    if isinstance(p, Deref):
        return "*" + _fmt(p.address, _UNARY)
    if isinstance(p, (Add, Sub)):
        op = "+" if isinstance(p, Add) else "-"
        return _paren(f"{_fmt(p.left, _SUM)} {op} {_fmt(p.right, _UNARY)}", _SUM, context)
    if isinstance(p, Gt):
        return _paren(f"{_fmt(p.left, _CMP)} > {_fmt(p.right, _SUM)}", _CMP, context)
    if isinstance(p, Assign):
        return _paren(f"{_fmt(p.target, _CMP)} <- {_fmt(p.source, _ASSIGN)}", _ASSIGN, context)
    if isinstance(p, Seq):
        return _paren(f"{_fmt(p.first, _ASSIGN)} ; {_fmt(p.second, _SEQ)}", _SEQ, context)
    if isinstance(p, While):
        return _paren(f"while {_fmt(p.guard, _ASSIGN)} do {_fmt(p.body, _SEQ)}", _SEQ, context)
    raise TypeError(f"not a program: {p!r}")
