"""Rule-by-rule comparison of an evaluation derivation and its proof.

Every evaluation rule corresponds to one clause, and every rule instance
in the derivation should show up as one backchaining step on that clause.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..engine import clause_label
from ..imp import Derivation, EvalRule, count_rules
from ..kernel import BC_RULES, ProofTree, Rule, preorder
from .translate import clause_labels

CLAUSE_FOR_RULE: dict[EvalRule, str] = {
    EvalRule.NUM: "v",
    EvalRule.ADD: "add",
    EvalRule.SUB: "sub",
    EvalRule.GT_TRUE: "gtT",
    EvalRule.GT_FALSE: "gtF",
    EvalRule.DEREF: "get",
    EvalRule.ASSIGN: "set",
    EvalRule.SEQ: "sq",
    EvalRule.WHILE_TRUE: "whT",
    EvalRule.WHILE_FALSE: "whF",
}


@dataclass(frozen=True, slots=True)
class MimicryRow:
    rule: EvalRule
    clause: str
    oracle_count: int
    bc_count: int

    @property
    def ok(self) -> bool:
        return self.oracle_count == self.bc_count


@dataclass(frozen=True, slots=True)
class MimicryReport:
    rows: tuple[MimicryRow, ...]
    unmatched: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.unmatched and all(row.ok for row in self.rows)

    @property
    def mismatches(self) -> tuple[EvalRule, ...]:
        return tuple(row.rule for row in self.rows if not row.ok)


def bc_counts(t: ProofTree) -> dict[str, int]:
    """Backchaining steps per clause label."""
    labels = clause_labels()
    counts: dict[str, int] = {}
    for node in preorder(t):
        if node.rule in BC_RULES:
            label = clause_label(node, labels) if node.rule is Rule.BC_U else "delta"
            counts[label] = counts.get(label, 0) + 1
    return counts


def mimicry_report(d: Derivation, t: ProofTree) -> MimicryReport:
    oracle = count_rules(d)
    proof = bc_counts(t)
    rows = tuple(
        MimicryRow(rule, label, oracle.get(rule, 0), proof.pop(label, 0))
        for rule, label in CLAUSE_FOR_RULE.items()
    )
    return MimicryReport(rows, tuple(sorted(proof)))


def format_mimicry(report: MimicryReport) -> str:
    header = ("rule-tag", "oracle-count", "bc-count")
    body = [(row.rule.value, str(row.oracle_count), str(row.bc_count)) for row in report.rows]
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(3)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header, *body]]
    for label in report.unmatched:
        lines.append(f"unmatched backchaining on {label}")
    lines.append("verdict: " + ("ok" if report.ok else "mismatch on " + ", ".join(r.value for r in report.mismatches)))
    return "\n".join(lines) + "\n"
