"""Abstract syntax of the imperative language.

Nodes support ``+``, ``-`` and ``>`` so small programs can be written
inline; plain ints become :class:`Num`::

    prog = seq(assign(2, deref(0)), assign(0, deref(1) + 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class Program:
    """Base class for program nodes."""

    __slots__ = ()

    def __add__(self, other: Any) -> Add:
        return Add(self, _wrap(other))

    def __sub__(self, other: Any) -> Sub:
        return Sub(self, _wrap(other))

    def __gt__(self, other: Any) -> Gt:  # type: ignore[override]
        return Gt(self, _wrap(other))


@dataclass(frozen=True, slots=True, order=False)
class Num(Program):
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"numerals are naturals, got {self.value}")


@dataclass(frozen=True, slots=True, order=False)
class Add(Program):
    left: Program
    right: Program


@dataclass(frozen=True, slots=True, order=False)
class Sub(Program):
    left: Program
    right: Program


@dataclass(frozen=True, slots=True, order=False)
class Gt(Program):
    left: Program
    right: Program


@dataclass(frozen=True, slots=True, order=False)
class Deref(Program):
    address: Program


@dataclass(frozen=True, slots=True, order=False)
class Assign(Program):
    target: Program
    source: Program


@dataclass(frozen=True, slots=True, order=False)
class Seq(Program):
    first: Program
    second: Program


@dataclass(frozen=True, slots=True, order=False)
class While(Program):
    guard: Program
    body: Program


def _wrap(value: Any) -> Program:
    if isinstance(value, Program):
        return value
    if isinstance(value, int):
        return Num(value)
    raise TypeError(f"cannot use {type(value).__name__} as a program")


def num(value: int) -> Num:
    return Num(value)


def deref(address: Any) -> Deref:
    return Deref(_wrap(address))


def assign(target: Any, source: Any) -> Assign:
    return Assign(_wrap(target), _wrap(source))


def seq(*parts: Any) -> Program:
    """Right-nested sequence of one or more programs."""
    if not parts:
        raise ValueError("seq needs at least one program")
    result = _wrap(parts[-1])
    for p in reversed(parts[:-1]):
        result = Seq(_wrap(p), result)
    return result


def while_(guard: Any, body: Any) -> While:
    return While(_wrap(guard), _wrap(body))


def subprograms(p: Program):
    """Immediate children of ``p``, left to right."""
    if isinstance(p, (Add, Sub, Gt)):
        return (p.left, p.right)
    if isinstance(p, Deref):
        return (p.address,)
    if isinstance(p, Assign):
        return (p.target, p.source)
    if isinstance(p, Seq):
        return (p.first, p.second)
    if isinstance(p, While):
        return (p.guard, p.body)
    return ()


def program_size(p: Program) -> int:
    count = 0
    stack = [p]
    while stack:
        node = stack.pop()
        count += 1
        stack.extend(subprograms(node))
    return count
