"""Unit tests for the normalization pipeline."""

import itertools

import pytest

from lolli.exc import NormalizationError
from lolli.kernel import (
    BC_RULES, Rule, Sequent,
    check_full, check_reduced, count_rules, is_coincided, is_simple, is_uniform, load_bundled,
    nonuniformity_measure, preorder, search_full,
)
from lolli.normalize import (
    STAGES, expand, format_steps, normalize, to_coincided, to_reduced, to_simple, to_uniform,
    to_uniform_steps,
)
from lolli.syntax import parse_formula


def bc_nodes(tree):
    return [node for node in preorder(tree) if node.rule in BC_RULES]


class TestUniform:
    def test_nonuniform_becomes_uniform(self):
        tree = load_bundled("nonuniform")
        result = to_uniform(tree)
        assert is_uniform(result)
        assert check_full(result)
        assert result.conclusion == tree.conclusion

    def test_measure_drops_every_stage(self):
        stages = to_uniform_steps(load_bundled("nonuniform"))
        measures = [nonuniformity_measure(t) for t in stages]
        assert measures[0] == 4
        assert measures[-1] == 0
        assert all(a > b for a, b in zip(measures, measures[1:]))

    def test_every_stage_is_a_proof_of_the_same_sequent(self):
        tree = load_bundled("nonuniform")
        for stage in to_uniform_steps(tree):
            assert check_full(stage)
            assert stage.conclusion == tree.conclusion

    def test_already_uniform_is_returned_unchanged(self):
        tree = load_bundled("uniform")
        steps = []
        assert to_uniform(tree, steps) is tree
        assert steps == []

    def test_steps_are_recorded(self):
        steps = []
        to_uniform(load_bundled("nonuniform"), steps)
        assert steps
        assert all(step.scheme.startswith("uniform.") for step in steps)
        assert all("@" in line for line in format_steps(steps).splitlines())

    def test_invalid_proof_rejected(self):
        tree = load_bundled("nonuniform")
        broken = tree.with_premises(())
        with pytest.raises(NormalizationError, match="not a valid full proof"):
            to_uniform(broken)


class TestSimpleAndCoincided:
    def test_forward_becomes_simple(self):
        tree = load_bundled("forward")
        assert not is_simple(tree)
        result = to_simple(tree)
        assert is_simple(result)
        assert check_full(result)
        assert result.conclusion == tree.conclusion

    def test_simple_needs_uniform_input(self):
        with pytest.raises(NormalizationError, match="uniform"):
            to_simple(load_bundled("nonuniform"))

    def test_coincided_needs_simple_input(self):
        with pytest.raises(NormalizationError, match="simple"):
            to_coincided(load_bundled("forward"))

    def test_coincided_from_simple(self):
        result = to_coincided(to_simple(load_bundled("forward")))
        assert is_coincided(result)
        assert check_full(result)

    def test_backward_is_already_normal(self):
        tree = load_bundled("backward")
        steps = []
        result = normalize(tree, "coincided", steps)
        assert result is tree
        assert steps == []


class TestReduced:
    def test_backward_reduces_to_three_backchaining_nodes(self):
        result = normalize(load_bundled("backward"))
        assert check_reduced(result)
        nodes = bc_nodes(result)
        assert len(nodes) == 3
        assert [n.rule for n in nodes] == [Rule.BC_B, Rule.BC_B, Rule.BC_U]

    def test_forward_and_backward_reduce_alike(self):
        forward = normalize(load_bundled("forward"))
        backward = normalize(load_bundled("backward"))
        assert count_rules(forward) == count_rules(backward)
        assert forward.conclusion == backward.conclusion

    def test_nonuniform_reduces(self):
        tree = load_bundled("nonuniform")
        result = normalize(tree)
        assert check_reduced(result)
        assert result.conclusion == tree.conclusion
        assert count_rules(result)[Rule.BC_U] == 2

    def test_reduced_input_rejected(self):
        reduced = normalize(load_bundled("backward"))
        with pytest.raises(NormalizationError, match="already in the backchaining system"):
            to_reduced(reduced)

    def test_reduced_steps_name_the_rule(self):
        steps = []
        normalize(load_bundled("backward"), "reduced", steps)
        assert [s.scheme for s in steps] == ["reduced.BCb", "reduced.BCb", "reduced.BCu"]

    def test_unknown_stage(self):
        with pytest.raises(ValueError, match="Unknown normal form"):
            normalize(load_bundled("backward"), "canonical")

    def test_stage_order(self):
        assert STAGES == ("uniform", "simple", "coincided", "reduced")


class TestExpand:
    @pytest.mark.parametrize("name", ["nonuniform", "forward", "backward"])
    def test_expansion_is_a_full_proof(self, name):
        tree = load_bundled(name)
        expanded = expand(normalize(tree))
        assert check_full(expanded)
        assert expanded.conclusion == tree.conclusion
        assert not bc_nodes(expanded)


CLAUSES = [
    "a", "b", "c", "a -o b", "b -o c",
    "(a -o b) -o c", "a -o b -o c", "(a => b) & c", "a & (b -o c)",
]
GOALS = ["a", "c", "a * b", "a & c", "b + c", "a -o c", "top", "c * top"]
UNBOUNDED = [(), ("a & b",), ("a -o c",)]


def small_sequents():
    for gamma in UNBOUNDED:
        for size in range(4):
            for delta in itertools.combinations_with_replacement(CLAUSES, size):
                for goal in GOALS:
                    yield Sequent(
                        tuple(parse_formula(f) for f in gamma),
                        tuple(parse_formula(f) for f in delta),
                        parse_formula(goal),
                    )


@pytest.mark.slow
class TestSweep:
    def test_every_found_proof_normalizes(self):
        proved = 0
        for sequent in small_sequents():
            tree = search_full(sequent, max_depth=5, strategy="left-first", node_limit=5_000)
            if tree is None:
                continue
            proved += 1
            assert check_full(tree), str(sequent)
            reduced = normalize(tree)
            assert check_reduced(reduced), str(sequent)
            assert reduced.conclusion == sequent, str(sequent)
            assert check_full(expand(reduced)), str(sequent)
        assert proved > 200

    def test_measure_drops_on_every_found_proof(self):
        for sequent in small_sequents():
            tree = search_full(sequent, max_depth=5, strategy="left-first", node_limit=5_000)
            if tree is None:
                continue
            measures = [nonuniformity_measure(stage) for stage in to_uniform_steps(tree)]
            assert measures[-1] == 0, str(sequent)
            assert all(a > b for a, b in zip(measures, measures[1:])), str(sequent)
