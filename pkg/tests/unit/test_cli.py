"""Tests for the lolli command line."""

from __future__ import annotations

import json

from lolli.cli import ExitCode, _build_parser, main
from lolli.kernel import check_full, check_reduced, load_proof, parse_proof


# ── Parser ────────────────────────────────────────────────────────────

class TestParser:
    def test_prove_defaults(self):
        args = _build_parser().parse_args(["prove", "p.imp", "m.mem"])
        assert args.command == "prove"
        assert args.trace is None
        assert args.discard is False
        assert args.emit_proof is None
        assert args.budget is None

    def test_normalize_defaults(self):
        args = _build_parser().parse_args(["normalize", "x.proof"])
        assert args.to == "reduced"
        assert args.output is None

    def test_check_system(self):
        args = _build_parser().parse_args(["check", "x.proof", "--system", "reduced"])
        assert args.system == "reduced"

    def test_no_command_returns_usage(self):
        assert main([]) == ExitCode.USAGE == 1


# ── run ───────────────────────────────────────────────────────────────

class TestRun:
    def test_swap(self, swap_files, capsys):
        assert main(["run", *swap_files]) == ExitCode.OK
        assert capsys.readouterr().out == "value 5\n0 7\n1 5\n2 5\n"

    def test_stuck(self, stuck_files, capsys):
        assert main(["run", *stuck_files]) == ExitCode.STUCK
        assert "stuck: read of undefined location 3" in capsys.readouterr().err

    def test_budget(self, loop_files):
        assert main(["run", *loop_files, "--budget", "500"]) == ExitCode.BUDGET

    def test_missing_file(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.imp")
        assert main(["run", missing, missing]) == ExitCode.USAGE
        assert "File not found" in capsys.readouterr().err

    def test_parse_error(self, program_files, capsys):
        files = program_files("1 <-\n", "0 0\n")
        assert main(["run", *files]) == ExitCode.PARSE
        assert "unexpected end of input" in capsys.readouterr().err

    def test_bad_memory(self, program_files):
        files = program_files("1\n", "0 zero\n")
        assert main(["run", *files]) == ExitCode.PARSE

    def test_report(self, swap_files, tmp_path):
        report = tmp_path / "run.json"
        assert main(["run", *swap_files, "--report", str(report)]) == ExitCode.OK
        data = json.loads(report.read_text())
        assert data["mode"] == "run"
        assert data["outcome"] == "ok"
        assert data["value"] == 5
        assert data["memory"] == {"0": 7, "1": 5, "2": 5}
        assert data["inputs"]["program"].startswith("sha256:")
        assert "elapsed_ms" not in data

    def test_report_is_deterministic(self, swap_files, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        main(["run", *swap_files, "--report", str(first)])
        main(["run", *swap_files, "--report", str(second)])
        assert first.read_bytes() == second.read_bytes()


# ── prove ─────────────────────────────────────────────────────────────

class TestProve:
    def test_swap(self, swap_files, capsys):
        assert main(["prove", *swap_files]) == ExitCode.OK
        assert capsys.readouterr().out == "value 5\n0 7\n1 5\n2 5\n"

    def test_discard(self, swap_files, capsys):
        assert main(["prove", *swap_files, "--discard"]) == ExitCode.OK
        assert capsys.readouterr().out == "value 5\n"

    def test_trace(self, swap_files, capsys):
        assert main(["prove", *swap_files, "--trace"]) == ExitCode.OK
        lines = capsys.readouterr().out.splitlines()
        events = [line for line in lines if line.startswith("BCu ")]
        assert len(events) == 14
        assert events[0].startswith("BCu sq ")

    def test_emit_proof(self, swap_files, tmp_path):
        out = tmp_path / "swap.proof"
        assert main(["prove", *swap_files, "--emit-proof", str(out)]) == ExitCode.OK
        assert check_reduced(load_proof(out))

    def test_stuck_is_unprovable(self, stuck_files, capsys):
        assert main(["prove", *stuck_files]) == ExitCode.STUCK
        assert "unprovable" in capsys.readouterr().err

    def test_budget(self, loop_files):
        assert main(["prove", *loop_files, "--budget", "500"]) == ExitCode.BUDGET


# ── check / normalize ─────────────────────────────────────────────────

class TestCheck:
    def test_full_proof(self, proof_file, capsys):
        assert main(["check", proof_file("nonuniform")]) == ExitCode.OK
        assert capsys.readouterr().out == "ok\n"

    def test_full_proof_is_not_reduced(self, proof_file, capsys):
        assert main(["check", proof_file("backward"), "--system", "reduced"]) == ExitCode.VIOLATION
        assert capsys.readouterr().out.startswith("violation: ")

    def test_emitted_proof_is_reduced(self, swap_files, tmp_path):
        out = tmp_path / "swap.proof"
        main(["prove", *swap_files, "--emit-proof", str(out)])
        assert main(["check", str(out), "--system", "reduced"]) == ExitCode.OK

    def test_unparsable_proof(self, tmp_path):
        bad = tmp_path / "bad.proof"
        bad.write_text("(id @0 [ . ; a |- a ]\n")
        assert main(["check", str(bad)]) == ExitCode.PARSE


class TestNormalize:
    def test_to_stdout(self, proof_file, capsys):
        assert main(["normalize", proof_file("forward")]) == ExitCode.OK
        tree = parse_proof(capsys.readouterr().out)
        assert check_reduced(tree)

    def test_output_and_steps(self, proof_file, tmp_path):
        out, steps = tmp_path / "out.proof", tmp_path / "steps.txt"
        code = main(["normalize", proof_file("nonuniform"), "--to", "uniform",
                     "--output", str(out), "--steps", str(steps)])
        assert code == ExitCode.OK
        assert check_full(load_proof(out))
        lines = steps.read_text().splitlines()
        assert lines
        assert all(line.startswith("uniform.") for line in lines)

    def test_reduced_input_is_rejected(self, swap_files, tmp_path, capsys):
        out = tmp_path / "swap.proof"
        main(["prove", *swap_files, "--emit-proof", str(out)])
        capsys.readouterr()
        assert main(["normalize", str(out)]) == ExitCode.VIOLATION
        assert "violation: " in capsys.readouterr().err


# ── compare ───────────────────────────────────────────────────────────

class TestCompare:
    def test_swap_agrees(self, swap_files, capsys):
        assert main(["compare", *swap_files]) == ExitCode.OK
        out = capsys.readouterr().out.splitlines()
        assert out[0].split() == ["rule-tag", "oracle-count", "bc-count"]
        assert "verdict: ok" in out
        assert out[-1] == "agree"

    def test_stuck_agrees_on_failure(self, stuck_files, capsys):
        assert main(["compare", *stuck_files]) == ExitCode.OK
        assert capsys.readouterr().out == "agree on failure: oracle stuck, logic unprovable\n"

    def test_budget(self, loop_files, capsys):
        assert main(["compare", *loop_files, "--budget", "500"]) == ExitCode.BUDGET
        assert "no verdict" in capsys.readouterr().err


# ── settings ──────────────────────────────────────────────────────────

class TestSettings:
    def test_config_budget(self, loop_files, tmp_path):
        cfg = tmp_path / "lolli.json"
        cfg.write_text(json.dumps({"lolli": {"step_budget": 50}}))
        assert main(["run", *loop_files, "--config", str(cfg)]) == ExitCode.BUDGET

    def test_invalid_config(self, swap_files, tmp_path, capsys):
        cfg = tmp_path / "lolli.json"
        cfg.write_text(json.dumps({"budget": 0}))
        assert main(["run", *swap_files, "--config", str(cfg)]) == ExitCode.USAGE
        assert "Invalid settings" in capsys.readouterr().err

    def test_missing_config(self, swap_files, capsys):
        assert main(["run", *swap_files, "--config", "/nonexistent/lolli.toml"]) == ExitCode.USAGE
        assert "Config file not found" in capsys.readouterr().err

    def test_config_can_discard(self, swap_files, tmp_path, capsys):
        cfg = tmp_path / "lolli.json"
        cfg.write_text(json.dumps({"collect": False}))
        assert main(["prove", *swap_files, "--config", str(cfg)]) == ExitCode.OK
        assert capsys.readouterr().out == "value 5\n"
