"""Normalization step records, printed one per line as ``scheme@path``."""

from __future__ import annotations

from dataclasses import dataclass

from ..kernel import Path, format_path


@dataclass(frozen=True, slots=True)
class Step:
    scheme: str
    path: Path

    def __str__(self) -> str:
        return f"{self.scheme}@{format_path(self.path)}"


def format_steps(steps: list[Step]) -> str:
    return "".join(f"{step}\n" for step in steps)
