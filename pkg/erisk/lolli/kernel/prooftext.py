"""Proof text format: one node per line, indented by depth.

::

    # comment
    (lolliL @1 [ A1 ; A1 -o A2, A2 -o A3 |- A3 ]
      (id @0 [ A1 ; A2 |- A2 ])
      ...)

A node is ``(rule annotations... [ gamma ; delta |- goal ] premises...)``.
Annotations: ``@N`` principal position, ``{ term }`` witness or
eigenvariable, ``{| unbounded ; bounded ; head |}`` clause triple.  Lists
are comma-separated; ``.`` is the empty list.  Formulas use the syntax of
:mod:`lolli.syntax.parser`.
"""

from __future__ import annotations

import functools
from importlib import resources
from pathlib import Path as FilePath

from lark import Lark, Token, v_args

from ..exc import ParseError
from ..syntax import Atom, ClauseTriple, format_formula, format_term
from ..syntax.parser import FORMULA_RULES, FormulaBuilder, as_formula, as_term, run_parser
from .proof import ProofTree, Rule
from .sequent import Sequent, format_context

PROOF_RULES = r"""
proof: "(" NAME annotation* sequent proof* ")"

?annotation: "@" INT                                  -> principal
           | "{" formula "}"                          -> witness
           | "{|" flist ";" flist ";" formula "|}"    -> triple

sequent: "[" flist ";" flist "|-" formula "]"

flist: "."                                            -> empty_list
     | formula ("," formula)*                         -> items
"""


@v_args(inline=True)
class ProofBuilder(FormulaBuilder):
    """Builds proof trees on top of the formula builder."""

    def principal(self, tok: Token):
        return ("principal", int(tok))

    def witness(self, item):
        return ("witness", as_term(item))

    def triple(self, unb, bnd, head):
        head = as_formula(head)
        if not isinstance(head, Atom):
            raise ParseError("triple head must be an atom")
        return ("triple", ClauseTriple(unb, bnd, head))

    def empty_list(self):
        return ()

    def items(self, *formulas):
        return tuple(as_formula(f) for f in formulas)

    def sequent(self, gamma, delta, goal):
        return Sequent(gamma, delta, as_formula(goal))

    def proof(self, name: Token, *rest) -> ProofTree:
        try:
            rule = Rule(str(name))
        except ValueError:
            raise ParseError(f"unknown rule {str(name)!r}", name.line, name.column) from None
        annotations: dict[str, object] = {}
        conclusion = None
        premises: list[ProofTree] = []
        for item in rest:
            if isinstance(item, tuple):
                annotations[item[0]] = item[1]
            elif isinstance(item, Sequent):
                conclusion = item
            else:
                premises.append(item)
        return ProofTree(
            rule,
            conclusion,  # type: ignore[arg-type]
            tuple(premises),
            annotations.get("principal"),  # type: ignore[arg-type]
            annotations.get("witness"),  # type: ignore[arg-type]
            annotations.get("triple"),  # type: ignore[arg-type]
        )


@functools.lru_cache(maxsize=None)
def _proof_parser() -> Lark:
    return Lark(FORMULA_RULES + PROOF_RULES, start="proof", parser="lalr", transformer=ProofBuilder())


def parse_proof(text: str) -> ProofTree:
    return run_parser(_proof_parser(), text)


def load_proof(path: str | FilePath) -> ProofTree:
    return parse_proof(FilePath(path).read_text(encoding="utf-8"))


BUNDLED = ("nonuniform", "uniform", "forward", "backward")


def load_bundled(name: str) -> ProofTree:
    """Load one of the proofs shipped in ``lolli/data``."""
    if name not in BUNDLED:
        raise ValueError(f"Unknown bundled proof {name!r}. Available: {', '.join(BUNDLED)}")
    text = resources.files("lolli").joinpath("data", f"{name}.proof").read_text(encoding="utf-8")
    return parse_proof(text)


# ── Printing ─────────────────────────────────────────────────────────


def _header(node: ProofTree) -> str:
    parts = [node.rule.value]
    if node.principal is not None:
        parts.append(f"@{node.principal}")
    if node.witness is not None:
        parts.append(f"{{ {format_term(node.witness)} }}")
    if node.triple is not None:
        t = node.triple
        parts.append(
            f"{{| {format_context(t.unbounded)} ; {format_context(t.bounded)} ; {format_formula(t.head)} |}}"
        )
    s = node.conclusion
    parts.append(f"[ {format_context(s.gamma)} ; {format_context(s.delta)} |- {format_formula(s.goal)} ]")
    return " ".join(parts)


def format_proof(tree: ProofTree, indent: str = "  ") -> str:
    lines: list[str] = []
    stack: list[tuple[ProofTree, int, bool]] = [(tree, 0, False)]
    while stack:
        node, depth, closing = stack.pop()
        if closing:
            lines[-1] += ")"
            continue
        lines.append(f"{indent * depth}({_header(node)}")
        stack.append((node, depth, True))
        for q in reversed(node.premises):
            stack.append((q, depth + 1, False))
    return "\n".join(lines) + "\n"


def write_proof(tree: ProofTree, path: str | FilePath) -> None:
    FilePath(path).write_text(format_proof(tree), encoding="utf-8")
