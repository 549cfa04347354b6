"""Simple types: base sorts and arrows."""

from __future__ import annotations

from dataclasses import dataclass


class SimpleType:
    """Base class for simple types."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class BaseType(SimpleType):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Arrow(SimpleType):
    arg: SimpleType
    result: SimpleType

    def __str__(self) -> str:
        left = f"({self.arg})" if isinstance(self.arg, Arrow) else str(self.arg)
        return f"{left} -> {self.result}"


O = BaseType("o")
IOTA = BaseType("i")
NAT = BaseType("nat")
PROG = BaseType("prog")

BASE_TYPES: dict[str, BaseType] = {t.name: t for t in (O, IOTA, NAT, PROG)}


def arrow(*types: SimpleType) -> SimpleType:
    """Right-nested arrow: ``arrow(a, b, c)`` is ``a -> b -> c``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def base_type(name: str) -> BaseType:
    """Look up or create a base type by name."""
    return BASE_TYPES.get(name) or BaseType(name)
