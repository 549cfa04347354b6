"""Proof normalization: full -> uniform -> simple -> coincided -> reduced.

Usage::

    from lolli.kernel import load_bundled
    from lolli.normalize import normalize

    steps = []
    reduced = normalize(load_bundled("forward"), "reduced", steps)
    print("".join(f"{step}\\n" for step in steps))
"""

from __future__ import annotations

from ..kernel import ProofTree
from .coincided import to_coincided
from .expand import expand
from .permute import lift_left, reapply, weaken
from .reduced import to_reduced
from .simple import to_simple
from .trace import Step, format_steps
from .uniform import first_violation, to_uniform, to_uniform_steps

STAGES = ("uniform", "simple", "coincided", "reduced")


def normalize(tree: ProofTree, to: str = "reduced", steps: list[Step] | None = None) -> ProofTree:
    """Run the normalizers in order up to and including stage ``to``."""
    if to not in STAGES:
        raise ValueError(f"Unknown normal form {to!r}. Use one of: {', '.join(STAGES)}")
    transforms = (to_uniform, to_simple, to_coincided, to_reduced)
    for stage, transform in zip(STAGES, transforms):
        tree = transform(tree, steps)
        if stage == to:
            break
    return tree


__all__ = [
    "STAGES", "Step", "expand", "first_violation", "format_steps", "lift_left", "normalize",
    "reapply", "to_coincided", "to_reduced", "to_simple", "to_uniform", "to_uniform_steps", "weaken",
]
