"""Unit tests for logging integration."""

import logging

from lolli.encoding import run_via_logic
from lolli.engine import SearchConfig, prove
from lolli.imp import Memory, eval_oracle, parse_program, swap_program
from lolli.kernel import load_bundled
from lolli.normalize import to_uniform
from lolli.syntax import parse_formula


class TestOracleLogging:
    def test_timing(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="lolli"):
            eval_oracle(swap_program(), Memory({0: 5, 1: 7, 2: 0}))

        assert any("completed in" in r.message and r.name == "lolli.oracle" for r in caplog.records)

    def test_budget_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="lolli"):
            eval_oracle(parse_program("while 1 > 0 do 0 <- 0"), Memory({0: 0}), step_budget=100)

        warnings = [r for r in caplog.records if r.levelno == logging.WARNING]
        assert [r.message for r in warnings] == ["evaluation budget of 100 derivation nodes exhausted"]


class TestSearchLogging:
    def test_proved(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="lolli"):
            prove((parse_formula("A1"),), (parse_formula("A1 -o A2"),), parse_formula("A2"))

        assert any("search proved goal with 2 BC nodes" in r.message for r in caplog.records)

    def test_budget_warning(self, caplog):
        with caplog.at_level(logging.WARNING, logger="lolli"):
            prove((parse_formula("p -o p"),), (), parse_formula("p"), SearchConfig(budget=50))

        assert any(
            r.name == "lolli.engine" and "search budget of 50 backchaining steps exhausted" in r.message
            for r in caplog.records
        )

    def test_quiet_at_default_level(self, caplog):
        with caplog.at_level(logging.WARNING, logger="lolli"):
            prove((), (parse_formula("a"),), parse_formula("a"))

        assert caplog.records == []


class TestPipelineLogging:
    def test_normalize_timing(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="lolli"):
            to_uniform(load_bundled("nonuniform"))

        assert any(r.name == "lolli.normalize" and "removed 4 violations" in r.message for r in caplog.records)

    def test_logic_run_timing(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="lolli"):
            run_via_logic(swap_program(), Memory({0: 5, 1: 7, 2: 0}))

        assert any(r.name == "lolli.encoding" and "completed in" in r.message for r in caplog.records)
