"""Unit tests for the imperative language: syntax, memories and the reference interpreter."""

import dataclasses
import random

import pytest

from lolli.exc import EvaluationError, ParseError
from lolli.outcome import Outcome
from lolli.imp import (
    Add, Assign, Deref, EvalRule, Memory, Num, Seq, Sub, While,
    check_derivation, count_rules, deref, eval_oracle, format_memory, format_program,
    parse_memory, parse_program, program_size, random_memory, random_program, run_sum, seq,
    sum_program, swap_program,
)


class TestParse:
    def test_swap(self):
        p = parse_program("2 <- *0 ; (0 <- *1 ; 1 <- *2)")
        assert p == Seq(
            Assign(Num(2), Deref(Num(0))),
            Seq(Assign(Num(0), Deref(Num(1))), Assign(Num(1), Deref(Num(2)))),
        )

    def test_arithmetic_is_left_associative(self):
        assert parse_program("1 + 2 - 3") == Sub(Add(Num(1), Num(2)), Num(3))

    def test_deref_binds_tightest(self):
        assert parse_program("*0 + 1") == Add(Deref(Num(0)), Num(1))
        assert parse_program("**0") == Deref(Deref(Num(0)))

    def test_while_body_extends_right(self):
        p = parse_program("while *1 > 0 do 0 <- 1 ; 1 <- 0")
        assert isinstance(p, While)
        assert isinstance(p.body, Seq)

    def test_comments_are_ignored(self):
        assert parse_program("# swap nothing\n0 <- 1") == Assign(Num(0), Num(1))

    def test_unexpected_end(self):
        with pytest.raises(ParseError, match="unexpected end of input"):
            parse_program("1 <-")

    def test_unexpected_character(self):
        with pytest.raises(ParseError, match="unexpected character '@'"):
            parse_program("1 @ 2")


class TestFormat:
    @pytest.mark.parametrize("text", [
        "2 <- *0 ; 0 <- *1 ; 1 <- *2",
        "while *1 > 0 do 0 <- *0 + *1 ; 1 <- *1 - 1",
        "1 - (2 - 3)",
        "(0 <- 1) + 2",
        "(while 0 do 1) ; 2",
    ])
    def test_round_trip(self, text):
        p = parse_program(text)
        assert format_program(p) == text
        assert parse_program(format_program(p)) == p

    def test_redundant_parentheses_dropped(self):
        assert format_program(swap_program()) == "2 <- *0 ; 0 <- *1 ; 1 <- *2"


class TestAst:
    def test_operators_build_nodes(self):
        assert deref(0) + 1 == Add(Deref(Num(0)), Num(1))
        assert (deref(0) > 2) == parse_program("*0 > 2")

    def test_seq_nests_right(self):
        assert seq(1, 2, 3) == Seq(Num(1), Seq(Num(2), Num(3)))
        with pytest.raises(ValueError):
            seq()

    def test_numerals_are_naturals(self):
        with pytest.raises(ValueError):
            Num(-1)

    def test_program_size(self):
        assert program_size(parse_program("1 <- *2")) == 4


class TestMemory:
    def test_parse(self):
        m = parse_memory("0 5\n# scratch\n\n1 7\n")
        assert m == {0: 5, 1: 7}

    def test_duplicate_location(self):
        with pytest.raises(ParseError, match="defined twice"):
            parse_memory("0 5\n0 6\n")

    def test_bad_line(self):
        with pytest.raises(ParseError, match="decimal naturals"):
            parse_memory("0 x\n")

    def test_naturals_only(self):
        with pytest.raises(EvaluationError):
            Memory({0: -1})

    def test_update_copies(self):
        m = Memory({0: 1})
        m2 = m.update(0, 2)
        assert m[0] == 1
        assert m2[0] == 2

    def test_format_sorted(self):
        assert format_memory(Memory({2: 0, 0: 9})) == "0 9\n2 0\n"

    def test_hashable(self):
        assert hash(Memory({0: 1, 1: 2})) == hash(Memory({1: 2, 0: 1}))


class TestOracle:
    def test_swap(self):
        result = eval_oracle(swap_program(), Memory({0: 5, 1: 7, 2: 0}))
        assert result.outcome is Outcome.OK
        assert result.value == 5
        assert result.memory == {0: 7, 1: 5, 2: 5}
        assert check_derivation(result.derivation) == []

    def test_sum(self):
        result = run_sum(3)
        assert result
        assert result.value == 0
        assert result.memory == {0: 6, 1: 0}
        assert check_derivation(result.derivation) == []

    def test_sum_rejects_negative(self):
        with pytest.raises(ValueError):
            sum_program(-1)

    def test_monus(self):
        assert eval_oracle(parse_program("1 - 5"), Memory()).value == 0

    def test_comparison_values(self):
        assert eval_oracle(parse_program("3 > 2"), Memory()).value == 1
        assert eval_oracle(parse_program("2 > 2"), Memory()).value == 0

    def test_stuck_read(self):
        result = eval_oracle(parse_program("*3"), Memory({0: 1}))
        assert result.outcome is Outcome.STUCK
        assert not result
        assert result.reason == "read of undefined location 3"

    def test_stuck_write(self):
        result = eval_oracle(parse_program("5 <- 1"), Memory({0: 1}))
        assert result.outcome is Outcome.STUCK
        assert "write to undefined location 5" in result.reason

    def test_divergence_exhausts_budget(self):
        result = eval_oracle(parse_program("while 1 > 0 do 0 <- 0"), Memory({0: 0}), step_budget=1_000)
        assert result.outcome is Outcome.BUDGET_EXHAUSTED
        assert result.value is None
        assert result.steps == 1_000

    def test_deep_loop_does_not_recurse(self):
        result = run_sum(2_000, step_budget=1_000_000)
        assert result.memory[0] == 2_000 * 2_001 // 2

    def test_rule_counts(self):
        result = eval_oracle(parse_program("1 <- *2"), Memory({1: 0, 2: 9}))
        assert count_rules(result.derivation) == {EvalRule.ASSIGN: 1, EvalRule.NUM: 2, EvalRule.DEREF: 1}

    def test_swap_rule_counts(self):
        result = eval_oracle(swap_program(), Memory({0: 5, 1: 7, 2: 0}))
        counts = count_rules(result.derivation)
        assert counts[EvalRule.ASSIGN] == 3
        assert counts[EvalRule.DEREF] == 3
        assert counts[EvalRule.SEQ] == 2
        assert sum(counts.values()) == 14

    def test_while_rules(self):
        counts = count_rules(run_sum(2).derivation)
        assert counts[EvalRule.WHILE_TRUE] == 2
        assert counts[EvalRule.WHILE_FALSE] == 1


class TestCheckDerivation:
    def test_tampered_value(self):
        d = eval_oracle(swap_program(), Memory({0: 5, 1: 7, 2: 0})).derivation
        bad = dataclasses.replace(d, value=99)
        assert check_derivation(bad) == ["seq: conclusion does not follow from the premises"]

    def test_wrong_rule(self):
        d = eval_oracle(parse_program("3 > 2"), Memory()).derivation
        bad = dataclasses.replace(d, rule=EvalRule.GT_FALSE, value=0)
        assert check_derivation(bad) == ["gtFalse: conclusion does not follow from the premises"]

    def test_missing_premise(self):
        d = eval_oracle(parse_program("1 + 2"), Memory()).derivation
        bad = dataclasses.replace(d, premises=d.premises[:1])
        assert check_derivation(bad) == ["add: expected 2 premises, got 1"]


class TestRandomPrograms:
    def test_deterministic(self):
        assert random_program(random.Random(7)) == random_program(random.Random(7))

    def test_stuck_only_on_the_extra_location(self):
        rng = random.Random(11)
        outcomes = set()
        for _ in range(100):
            p, m = random_program(rng), random_memory(rng)
            result = eval_oracle(p, m)
            outcomes.add(result.outcome)
            if result:
                assert check_derivation(result.derivation) == []
            else:
                assert result.outcome is Outcome.STUCK
                assert result.reason.endswith("undefined location 3"), format_program(p)
        assert outcomes == {Outcome.OK, Outcome.STUCK}
