"""Finite memories: partial maps from locations to naturals.

Memory files hold one ``loc value`` pair per line; blank lines and ``#``
comments are skipped.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from pathlib import Path

from ..exc import EvaluationError, ParseError


class Memory(Mapping[int, int]):
    """Immutable memory; :meth:`update` returns a modified copy."""

    __slots__ = ("_cells",)

    def __init__(self, cells: Mapping[int, int] | None = None) -> None:
        cells = dict(cells or {})
        for loc, value in cells.items():
            if not isinstance(loc, int) or not isinstance(value, int) or loc < 0 or value < 0:
                raise EvaluationError(f"memory cells hold naturals, got {loc!r} -> {value!r}")
        self._cells = cells

    def __getitem__(self, loc: int) -> int:
        return self._cells[loc]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._cells))

    def __len__(self) -> int:
        return len(self._cells)

    def __hash__(self) -> int:
        return hash(frozenset(self._cells.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{loc}: {value}" for loc, value in self.items())
        return f"Memory({{{inner}}})"

    def update(self, loc: int, value: int) -> Memory:
        cells = dict(self._cells)
        cells[loc] = value
        return Memory(cells)


def parse_memory(text: str) -> Memory:
    cells: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected 'loc value' with decimal naturals, got {line!r}", lineno, 1)
        loc, value = int(parts[0]), int(parts[1])
        if loc in cells:
            raise ParseError(f"location {loc} defined twice", lineno, 1)
        cells[loc] = value
    return Memory(cells)


def load_memory(path: str | Path) -> Memory:
    return parse_memory(Path(path).read_text(encoding="utf-8"))


def format_memory(m: Mapping[int, int]) -> str:
    return "".join(f"{loc} {m[loc]}\n" for loc in sorted(m))
