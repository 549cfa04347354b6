"""Shared fixtures: program and memory files, bundled proofs."""

from __future__ import annotations

import pytest

from lolli.kernel import format_proof, load_bundled


def write_program(tmp_path, program: str, memory: str, name: str = "prog"):
    """Write a program and a memory file under ``tmp_path``; return both paths as strings."""
    p = tmp_path / f"{name}.imp"
    m = tmp_path / f"{name}.mem"
    p.write_text(program, encoding="utf-8")
    m.write_text(memory, encoding="utf-8")
    return str(p), str(m)


@pytest.fixture
def swap_files(tmp_path):
    """The swap program over locations 0, 1 and scratch 2."""
    return write_program(tmp_path, "2 <- *0 ; (0 <- *1 ; 1 <- *2)\n", "0 5\n1 7\n2 0\n", "swap")


@pytest.fixture
def stuck_files(tmp_path):
    return write_program(tmp_path, "0 <- *3\n", "0 1\n", "stuck")


@pytest.fixture
def loop_files(tmp_path):
    return write_program(tmp_path, "while 1 > 0 do 0 <- 0\n", "0 0\n", "loop")


@pytest.fixture
def proof_file(tmp_path):
    """Factory writing a bundled proof to a file."""

    def make(name: str) -> str:
        path = tmp_path / f"{name}.proof"
        path.write_text(format_proof(load_bundled(name)), encoding="utf-8")
        return str(path)

    return make


@pytest.fixture
def program_files(tmp_path):
    """Factory: ``program_files(program, memory)`` -> (program path, memory path)."""

    def make(program: str, memory: str, name: str = "prog"):
        return write_program(tmp_path, program, memory, name)

    return make
