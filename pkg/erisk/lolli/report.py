"""Machine-readable summaries of CLI runs.

Reports serialize deterministically: keys are sorted and wall time is
left out unless asked for, so identical inputs give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .outcome import Outcome


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True, slots=True)
class RunReport:
    mode: str
    outcome: Outcome
    inputs: Mapping[str, str] = field(default_factory=dict)
    value: int | None = None
    memory: Mapping[int, int] | None = None
    counts: Mapping[str, int] = field(default_factory=dict)
    detail: str | None = None
    elapsed_ms: float = field(default=0.0, compare=False)

    def to_dict(self, include_elapsed: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "mode": self.mode,
            "outcome": self.outcome.value,
            "inputs": dict(self.inputs),
            "value": self.value,
            "memory": None if self.memory is None else {str(k): self.memory[k] for k in sorted(self.memory)},
            "counts": dict(self.counts),
        }
        if self.detail is not None:
            data["detail"] = self.detail
        if include_elapsed:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data

    def to_json(self, include_elapsed: bool = False) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True, indent=2) + "\n"

    def write(self, path: str | Path, include_elapsed: bool = False) -> None:
        Path(path).write_text(self.to_json(include_elapsed), encoding="utf-8")
