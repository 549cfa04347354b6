"""Unit tests for proof trees, the proof text format, checkers and classifiers."""

from importlib import resources

import pytest

from lolli.exc import ParseError
from lolli.kernel import (
    BUNDLED, Rule, Sequent,
    check_full, check_reduced, format_proof, is_coincided, is_simple, is_uniform, load_bundled,
    load_proof, nonuniformity_measure, parse_proof, preorder, replace_at, search_full, size,
    write_proof,
)
from lolli.syntax import parse_formula

EIGEN_OK = """
(forallR { c } [ . ; . |- all x : i. p x -o p x ]
  (lolliR [ . ; . |- p c -o p c ]
    (id @0 [ . ; p c |- p c ])))
"""

EIGEN_CLASH = """
(forallR { c } [ . ; . |- all x : i. p x -o p c ]
  (lolliR [ . ; . |- p c -o p c ]
    (id @0 [ . ; p c |- p c ])))
"""


def bundled_text(name):
    text = resources.files("lolli").joinpath("data", f"{name}.proof").read_text(encoding="utf-8")
    return "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))


class TestProofText:
    def test_bundled_proofs_load(self):
        for name in BUNDLED:
            tree = load_bundled(name)
            assert tree.conclusion.goal is not None

    def test_unknown_bundled_name(self):
        with pytest.raises(ValueError, match="Unknown bundled proof"):
            load_bundled("missing")

    def test_printer_reproduces_bundled_file(self):
        assert format_proof(load_bundled("backward")) == bundled_text("backward")

    def test_round_trip_through_file(self, tmp_path):
        tree = load_bundled("nonuniform")
        path = tmp_path / "p.proof"
        write_proof(tree, path)
        again = load_proof(path)
        assert [n.rule for n in preorder(again)] == [n.rule for n in preorder(tree)]
        assert again.conclusion == tree.conclusion

    def test_witness_annotation(self):
        tree = parse_proof(EIGEN_OK)
        assert tree.witness is not None
        assert "{ c }" in format_proof(tree)

    def test_unknown_rule(self):
        with pytest.raises(ParseError, match="unknown rule 'foo'"):
            parse_proof("(foo [ . ; . |- top ])")

    def test_syntax_error(self):
        with pytest.raises(ParseError):
            parse_proof("(id @0 [ . ; a |- a ]")


class TestSequent:
    def test_contexts_compare_as_set_and_multiset(self):
        a, b = parse_formula("a"), parse_formula("b")
        assert Sequent((a, b), (a, b), a) == Sequent((b, a, a), (b, a), a)
        assert Sequent((), (a, a), a) != Sequent((), (a,), a)

    def test_str(self):
        a = parse_formula("a")
        assert str(Sequent((), (a,), a)) == ". ; a |- a"


class TestCheckFull:
    @pytest.mark.parametrize("name", BUNDLED)
    def test_bundled_proofs_check(self, name):
        report = check_full(load_bundled(name))
        assert report
        assert report.violation is None

    def test_missing_premise(self):
        tree = load_bundled("backward")
        broken = tree.with_premises(tree.premises[:1])
        report = check_full(broken)
        assert not report
        assert report.violation.path == ()
        assert "expected 2 premises, got 1" in str(report.violation)

    def test_wrong_split_reported_with_path(self):
        tree = load_bundled("forward")
        leaf = parse_proof("(id @0 [ A1 ; A3 |- A2 ])")
        report = check_full(replace_at(tree, (1, 0), leaf))
        assert not report
        assert report.violation.path == (1,)
        assert "do not partition" in str(report.violation)

    def test_eigenvariable_must_be_fresh(self):
        assert check_full(parse_proof(EIGEN_OK))
        report = check_full(parse_proof(EIGEN_CLASH))
        assert not report
        assert "eigenvariable c occurs in the conclusion" in str(report.violation)

    def test_reduced_system_rejects_left_rules(self):
        report = check_reduced(load_bundled("forward"))
        assert not report
        assert "not part of the reduced system" in str(report.violation)

    def test_counts_nodes(self):
        tree = load_bundled("uniform")
        assert check_full(tree).nodes == size(tree)


class TestClassifiers:
    def test_nonuniform_proof(self):
        tree = load_bundled("nonuniform")
        report = is_uniform(tree)
        assert not report
        assert report.offenders
        assert nonuniformity_measure(tree) == 4

    def test_uniform_proof(self):
        tree = load_bundled("uniform")
        assert is_uniform(tree)
        assert nonuniformity_measure(tree) == 0

    def test_forward_chaining_is_not_simple(self):
        tree = load_bundled("forward")
        assert is_uniform(tree)
        assert not is_simple(tree)

    def test_backward_chaining_is_simple_and_coincided(self):
        tree = load_bundled("backward")
        assert is_simple(tree)
        assert is_coincided(tree)


class TestSearchFull:
    @pytest.mark.parametrize("strategy", ["left-first", "right-first"])
    def test_finds_checkable_proofs(self, strategy):
        goal = parse_formula("a & b => a * b")
        tree = search_full(Sequent((), (), goal), strategy=strategy)
        assert tree is not None
        assert check_full(tree)

    def test_linear_variant_has_no_proof(self):
        goal = parse_formula("a & b -o a * b")
        assert search_full(Sequent((), (), goal)) is None

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            search_full(Sequent((), (), parse_formula("top")), strategy="sideways")

    def test_uses_bounded_clauses(self):
        a, b = parse_formula("a"), parse_formula("b")
        tree = search_full(Sequent((), (a, parse_formula("a -o b")), b))
        assert tree is not None
        assert check_full(tree)
        assert any(n.rule is Rule.LOLLI_L for n in preorder(tree))
