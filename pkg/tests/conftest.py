"""Shared fixtures: the program corpus and compilation helpers."""

from __future__ import annotations

from pathlib import Path

import pytest

from syrec import compile_source
from syrec.elaborate import ElaboratedProgram

CORPUS_DIR = Path(__file__).parent / "corpus"

ALU_SOURCE = (
    "module alu(in op(1), out x0(2), in x1(2), in x2(2)) "
    "if (op = 1) then x0 ^= (x1 + x2) else x0 ^= (x1 - x2) fi (op = 1)"
)


def corpus_sources() -> list[tuple[str, str]]:
    return [(path.stem, path.read_text(encoding="utf-8"))
            for path in sorted(CORPUS_DIR.glob("*.syrec"))]


def compile_ok(source: str) -> ElaboratedProgram:
    outcome = compile_source(source)
    assert outcome.ok, [str(d) for d in outcome.diagnostics]
    return outcome.program


def input_signals(program: ElaboratedProgram) -> list[tuple[str, int]]:
    return [(name, info.width) for name, info in program.entry_symbols().items()
            if info.is_input]


def all_input_assignments(program: ElaboratedProgram):
    """Every assignment of the entry module's input signals, ascending."""
    signals = input_signals(program)
    total = sum(width for _, width in signals)
    for word in range(1 << total):
        values, shift = {}, 0
        for name, width in signals:
            values[name] = (word >> shift) & ((1 << width) - 1)
            shift += width
        yield values


def total_input_bits(program: ElaboratedProgram) -> int:
    return sum(width for _, width in input_signals(program))


@pytest.fixture
def alu_program() -> ElaboratedProgram:
    return compile_ok(ALU_SOURCE)


@pytest.fixture(params=corpus_sources(), ids=lambda item: item[0])
def corpus_program(request) -> tuple[str, ElaboratedProgram]:
    name, source = request.param
    return name, compile_ok(source)
