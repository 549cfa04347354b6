"""Command-line interface for lolli.

Usage::

    lolli run PROGRAM MEMORY [--budget N]
    lolli prove PROGRAM MEMORY [--emit-proof FILE] [--trace] [--discard]
    lolli check PROOF [--system full|reduced]
    lolli normalize PROOF [--to uniform|simple|coincided|reduced] [--output FILE] [--steps FILE]
    lolli compare PROGRAM MEMORY
    python -m lolli run ...

Results go to stdout, diagnostics to stderr.  Every command accepts
``--config FILE``, ``--report FILE`` (JSON run report) and ``--verbose``.
"""

from __future__ import annotations

import argparse
import enum
import logging
import sys
from pathlib import Path

from .exc import ConfigError, NormalizationError, ParseError
from .outcome import Outcome
from .report import RunReport, digest

log = logging.getLogger("lolli.cli")


class ExitCode(enum.IntEnum):
    OK = 0
    USAGE = 1
    PARSE = 2
    STUCK = 3
    BUDGET = 4
    VIOLATION = 5


_OUTCOME_CODES = {
    Outcome.OK: ExitCode.OK,
    Outcome.STUCK: ExitCode.STUCK,
    Outcome.UNPROVABLE: ExitCode.STUCK,
    Outcome.BUDGET_EXHAUSTED: ExitCode.BUDGET,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Settings file (.json, .toml, .yaml).")
    common.add_argument("--report", help="Write a JSON run report to this file.")
    common.add_argument(
        "--budget", type=int,
        help="Cap on backchaining steps and on evaluation derivation nodes (default: 100000).",
    )
    common.add_argument("-v", "--verbose", action="store_true", default=False, help="Log at DEBUG level.")

    parser = argparse.ArgumentParser(
        prog="lolli",
        description="lolli CLI: run imperative programs through natural semantics and Lolli proof search.",
    )
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", parents=[common], help="Evaluate a program with the reference interpreter.")
    run.add_argument("program", help="Program file.")
    run.add_argument("memory", help="Memory file, one 'loc value' pair per line.")

    prove = sub.add_parser("prove", parents=[common], help="Evaluate a program by proof search.")
    prove.add_argument("program", help="Program file.")
    prove.add_argument("memory", help="Memory file, one 'loc value' pair per line.")
    prove.add_argument("--emit-proof", help="Write the backchaining proof to this file.")
    prove.add_argument("--trace", action="store_true", default=None, help="Print the backchaining steps.")
    prove.add_argument(
        "--discard", action="store_true", default=False,
        help="Prove with a 'top' continuation; the final memory is not read back.",
    )

    check = sub.add_parser("check", parents=[common], help="Check a proof file.")
    check.add_argument("proof", help="Proof file.")
    check.add_argument("--system", choices=("full", "reduced"), default="full", help="Calculus to check against (default: full).")

    norm = sub.add_parser("normalize", parents=[common], help="Normalize a full-calculus proof.")
    norm.add_argument("proof", help="Proof file.")
    norm.add_argument(
        "--to", choices=("uniform", "simple", "coincided", "reduced"), default="reduced",
        help="Target normal form; earlier stages run first (default: reduced).",
    )
    norm.add_argument("--output", help="Write the normalized proof here instead of stdout.")
    norm.add_argument("--steps", help="Write the permutation steps taken to this file.")

    compare = sub.add_parser("compare", parents=[common], help="Run both evaluators and compare them rule by rule.")
    compare.add_argument("program", help="Program file.")
    compare.add_argument("memory", help="Memory file, one 'loc value' pair per line.")

    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return ExitCode.USAGE

    try:
        settings = _settings(args)
    except (ConfigError, FileNotFoundError, ValueError, ImportError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    _configure_logging(logging.DEBUG if args.verbose else settings.level)

    commands = {
        "run": _cmd_run,
        "prove": _cmd_prove,
        "check": _cmd_check,
        "normalize": _cmd_normalize,
        "compare": _cmd_compare,
    }
    try:
        code, report = commands[args.command](args, settings)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.PARSE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    if args.report and report is not None:
        report.write(args.report)
    return code


def _settings(args: argparse.Namespace):
    from .config import Settings, settings_from_config

    settings = settings_from_config(args.config) if args.config else Settings()
    trace = getattr(args, "trace", None)
    return settings.replace(budget=args.budget, step_budget=args.budget, trace=trace)


def _configure_logging(level: int) -> None:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("lolli").setLevel(level)


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"File not found: {p}")
    return p.read_text(encoding="utf-8")


def _load_inputs(args: argparse.Namespace):
    from .imp import parse_memory, parse_program

    program_text, memory_text = _read(args.program), _read(args.memory)
    inputs = {"memory": digest(memory_text), "program": digest(program_text)}
    return parse_program(program_text), parse_memory(memory_text), inputs


def _print_result(value: int | None, memory) -> None:
    from .imp import format_memory

    print(f"value {value}")
    if memory is not None:
        sys.stdout.write(format_memory(memory))


# ── Commands ─────────────────────────────────────────────────────

def _cmd_run(args: argparse.Namespace, settings) -> tuple[int, RunReport]:
    from .imp import eval_oracle

    program, memory, inputs = _load_inputs(args)
    result = eval_oracle(program, memory, settings.step_budget)
    counts = {"oracle_steps": result.steps}
    if result:
        _print_result(result.value, result.memory)
    else:
        print(f"{result.outcome.value}: {result.reason or 'no result'}", file=sys.stderr)
    report = RunReport("run", result.outcome, inputs, result.value, result.memory, counts,
                       result.reason, result.elapsed_ms)
    return _OUTCOME_CODES[result.outcome], report


def _cmd_prove(args: argparse.Namespace, settings) -> tuple[int, RunReport]:
    from .encoding import run_via_logic
    from .engine import format_trace
    from .kernel import check_reduced, write_proof

    program, memory, inputs = _load_inputs(args)
    mode = "discard" if args.discard or not settings.collect else "collect"
    run = run_via_logic(program, memory, settings.search_config(), mode)
    search = run.search
    counts = {"bc_nodes": search.bc_nodes if search else 0, "bc_steps": search.steps if search else 0}
    if not run:
        print(f"{run.outcome.value}", file=sys.stderr)
        return _OUTCOME_CODES[run.outcome], RunReport("prove", run.outcome, inputs, counts=counts, elapsed_ms=run.elapsed_ms)
    verdict = check_reduced(run.proof)  # type: ignore[arg-type]
    if not verdict:
        print(f"error: emitted proof does not check: {verdict.violation}", file=sys.stderr)
        return ExitCode.VIOLATION, RunReport("prove", run.outcome, inputs, run.value, run.memory, counts,
                                             str(verdict.violation), run.elapsed_ms)
    _print_result(run.value, run.memory)
    if settings.trace and search is not None:
        sys.stdout.write(format_trace(search.trace))
    if args.emit_proof:
        write_proof(run.proof, args.emit_proof)  # type: ignore[arg-type]
        log.info("wrote proof to %s", args.emit_proof)
    report = RunReport("prove", run.outcome, inputs, run.value, run.memory, counts, None, run.elapsed_ms)
    return ExitCode.OK, report


def _cmd_check(args: argparse.Namespace, settings) -> tuple[int, RunReport]:
    from .kernel import check_full, check_reduced, parse_proof

    text = _read(args.proof)
    tree = parse_proof(text)
    verdict = check_full(tree) if args.system == "full" else check_reduced(tree)
    inputs = {"proof": digest(text)}
    counts = {"nodes": verdict.nodes}
    if verdict:
        print("ok")
        return ExitCode.OK, RunReport(f"check-{args.system}", Outcome.OK, inputs, counts=counts)
    print(f"violation: {verdict.violation}")
    return ExitCode.VIOLATION, RunReport(f"check-{args.system}", Outcome.UNPROVABLE, inputs, counts=counts,
                                         detail=str(verdict.violation))


def _cmd_normalize(args: argparse.Namespace, settings) -> tuple[int, RunReport]:
    from .kernel import check_full, format_proof, parse_proof
    from .normalize import Step, format_steps, normalize

    text = _read(args.proof)
    tree = parse_proof(text)
    inputs = {"proof": digest(text)}
    verdict = check_full(tree)
    if not verdict:
        print(f"violation: {verdict.violation}", file=sys.stderr)
        return ExitCode.VIOLATION, RunReport("normalize", Outcome.UNPROVABLE, inputs, detail=str(verdict.violation))
    steps: list[Step] = []
    try:
        result = normalize(tree, args.to, steps)
    except NormalizationError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.VIOLATION, RunReport("normalize", Outcome.UNPROVABLE, inputs, detail=str(e))
    if args.output:
        Path(args.output).write_text(format_proof(result), encoding="utf-8")
    else:
        sys.stdout.write(format_proof(result))
    if args.steps:
        Path(args.steps).write_text(format_steps(steps), encoding="utf-8")
    log.info("normalized to %s in %d steps", args.to, len(steps))
    return ExitCode.OK, RunReport(f"normalize-{args.to}", Outcome.OK, inputs, counts={"steps": len(steps)})


def _cmd_compare(args: argparse.Namespace, settings) -> tuple[int, RunReport]:
    from .encoding import format_mimicry, mimicry_report, run_via_logic
    from .imp import eval_oracle

    program, memory, inputs = _load_inputs(args)
    oracle = eval_oracle(program, memory, settings.step_budget)
    logic = run_via_logic(program, memory, settings.search_config())
    counts = {
        "bc_nodes": logic.search.bc_nodes if logic.search else 0,
        "oracle_steps": oracle.steps,
    }
    if Outcome.BUDGET_EXHAUSTED in (oracle.outcome, logic.outcome):
        print("budget exhausted: no verdict", file=sys.stderr)
        return ExitCode.BUDGET, RunReport("compare", Outcome.BUDGET_EXHAUSTED, inputs, counts=counts)
    if not oracle and not logic:
        print(f"agree on failure: oracle {oracle.outcome.value}, logic {logic.outcome.value}")
        return ExitCode.OK, RunReport("compare", oracle.outcome, inputs, counts=counts, detail="agree")
    agree = bool(oracle) and bool(logic) and oracle.value == logic.value and oracle.memory == logic.memory
    if oracle and logic:
        table = mimicry_report(oracle.derivation, logic.proof)  # type: ignore[arg-type]
        sys.stdout.write(format_mimicry(table))
        agree = agree and table.ok
    verdict = "agree" if agree else "disagree"
    print(verdict)
    report = RunReport("compare", Outcome.OK if agree else oracle.outcome, inputs, oracle.value, oracle.memory,
                       counts, verdict)
    return (ExitCode.OK if agree else ExitCode.VIOLATION), report


if __name__ == "__main__":
    sys.exit(main())
