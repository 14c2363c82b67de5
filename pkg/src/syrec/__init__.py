"""Compiler toolchain for the SyReC reversible hardware description language.

Pipeline: parse -> analyze -> elaborate, then either interpret (reference
semantics) or synthesize to a reversible MCT/MCF circuit under a cost-aware
or line-aware strategy, simulate it, and serialize it as `.real`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analyzer import CheckedProgram, analyze, try_analyze
from .ast import Program, program_to_source
from .circuit import (
    DEFAULT_COST_MODEL,
    Circuit,
    CircuitStats,
    CostModel,
    Gate,
    Line,
    permutation,
    reverse_circuit,
    statistics,
)
from .diagnostics import (
    AnalysisError,
    Diagnostic,
    ElaborationError,
    FiConditionError,
    InterpreterError,
    ParseError,
    RealFormatError,
    SynthesisError,
    SyrecError,
)
from .elaborate import ElabSettings, ElaboratedProgram, elaborate
from .interpreter import InterpResult, SignalState, interpret, invert_statements
from .lexer import Token, tokenize
from .parser import parse, try_parse
from .realfmt import emit_real, emit_stats, parse_real
from .simulator import apply_gate, check_reversible, dump_truth_table, run, truth_table
from .synthesis import (
    SignalBinding,
    SynthesisMode,
    SynthesisResult,
    SynthesisSettings,
    embed_inputs,
    extract_outputs,
    extract_signal,
    synthesize,
)

__version__ = "0.1.0"


@dataclass
class CompileOutcome:
    program: ElaboratedProgram | None
    diagnostics: list[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.program is not None


def compile_source(source: str, default_width: int = 32,
                   elab: ElabSettings | None = None) -> CompileOutcome:
    """Run the whole frontend, collecting diagnostics instead of raising."""
    try:
        program = parse(source)
        checked = analyze(program, default_width)
        elaborated = elaborate(checked, elab)
        return CompileOutcome(elaborated, list(checked.warnings))
    except SyrecError as exc:
        return CompileOutcome(None, exc.diagnostics)


__all__ = [
    "AnalysisError", "CheckedProgram", "Circuit", "CircuitStats", "CompileOutcome",
    "CostModel", "DEFAULT_COST_MODEL", "Diagnostic", "ElabSettings", "ElaboratedProgram",
    "ElaborationError", "FiConditionError", "Gate", "InterpResult", "InterpreterError",
    "Line", "ParseError", "Program", "RealFormatError", "SignalBinding", "SignalState",
    "SynthesisError", "SynthesisMode", "SynthesisResult", "SynthesisSettings", "SyrecError",
    "Token", "analyze", "apply_gate", "check_reversible", "compile_source", "dump_truth_table",
    "elaborate", "embed_inputs", "emit_real", "emit_stats", "extract_outputs", "extract_signal",
    "interpret", "invert_statements", "parse", "parse_real", "permutation", "program_to_source",
    "reverse_circuit", "run", "statistics", "synthesize", "tokenize", "truth_table",
    "try_analyze", "try_parse",
]
