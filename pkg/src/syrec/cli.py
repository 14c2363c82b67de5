"""Command-line entry points.

Subcommands: synth (compile to .real + stats JSON), sim (simulate the
synthesized circuit on given inputs), cost (print cost reports), check
(equivalence of circuit vs. reference evaluator), serve (HTTP service).
Exit codes: 0 success, 1 diagnostics or check failure, 2 I/O errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import compile_source
from .diagnostics import Diagnostic, InterpreterError
from .elaborate import ElaboratedProgram
from .interpreter import interpret
from .realfmt import emit_real, emit_stats
from .simulator import run
from .synthesis import (
    SynthesisMode,
    SynthesisSettings,
    embed_inputs,
    extract_outputs,
    extract_signal,
    synthesize,
)

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_IO = 2

DEFAULT_PORT = 8080
EXHAUSTIVE_BIT_LIMIT = 12


def _print_diagnostics(path: str, diagnostics: list[Diagnostic]) -> None:
    for diag in diagnostics:
        print(f"{path}:{diag}", file=sys.stderr)


def _load_program(path: str, width: int) -> tuple[ElaboratedProgram | None, int]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            source = handle.read()
    except OSError as exc:
        print(f"cannot read '{path}': {exc}", file=sys.stderr)
        return None, EXIT_IO
    outcome = compile_source(source, default_width=width)
    _print_diagnostics(path, outcome.diagnostics)
    if not outcome.ok:
        return None, EXIT_DIAGNOSTICS
    return outcome.program, EXIT_OK


def _parse_mode(name: str) -> SynthesisMode:
    return SynthesisMode.from_name(name)


def _parse_assignments(pairs: list[str]) -> dict[str, int]:
    values: dict[str, int] = {}
    for pair in pairs:
        name, sep, text = pair.partition("=")
        if not sep or not name:
            raise ValueError(f"expected name=value, got '{pair}'")
        values[name] = int(text, 0)
    return values


def cmd_synth(args: argparse.Namespace) -> int:
    program, status = _load_program(args.input, args.width)
    if program is None:
        return status
    result = synthesize(program, _parse_mode(args.mode), SynthesisSettings(args.max_lines))
    real_text = emit_real(result.circuit)
    stats_text = emit_stats(result.stats, args.mode, program.entry.name)
    out_path = args.output or os.path.splitext(args.input)[0] + ".real"
    try:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(real_text)
        if args.stats:
            with open(args.stats, "w", encoding="utf-8") as handle:
                handle.write(stats_text)
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(stats_text)
    return EXIT_OK


def cmd_sim(args: argparse.Namespace) -> int:
    program, status = _load_program(args.input, args.width)
    if program is None:
        return status
    try:
        inputs = _parse_assignments(args.set or [])
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DIAGNOSTICS

    symbols = program.entry_symbols()
    missing = [name for name, info in symbols.items() if info.is_input and name not in inputs]
    if missing:
        print(f"unassigned input {missing[0]}", file=sys.stderr)
        return EXIT_DIAGNOSTICS

    result = synthesize(program, _parse_mode(args.mode), SynthesisSettings(args.max_lines))
    try:
        word = embed_inputs(result.binding, inputs, result.circuit.line_count)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DIAGNOSTICS
    final = run(result.circuit, word)
    outputs = extract_outputs(result.binding, final)
    for name, value in outputs.items():
        print(f"{name}={value}")

    if args.oracle:
        try:
            reference = interpret(program, inputs).final_state
        except InterpreterError as exc:
            print(f"reference evaluation failed: {exc}", file=sys.stderr)
            return EXIT_DIAGNOSTICS
        mismatches = {name: (value, reference[name]) for name, value in outputs.items()
                      if reference[name] != value}
        if mismatches:
            for name, (got, want) in mismatches.items():
                print(f"mismatch: {name}: circuit={got} reference={want}", file=sys.stderr)
            return EXIT_DIAGNOSTICS
        print("reference agrees")
    return EXIT_OK


def cmd_cost(args: argparse.Namespace) -> int:
    program, status = _load_program(args.input, args.width)
    if program is None:
        return status
    modes = [m.value for m in SynthesisMode] if args.mode == "both" else [args.mode]
    for mode in modes:
        result = synthesize(program, _parse_mode(mode), SynthesisSettings(args.max_lines))
        print(emit_stats(result.stats, mode, program.entry.name))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    program, status = _load_program(args.input, args.width)
    if program is None:
        return status
    symbols = program.entry_symbols()
    input_signals = [(name, info.width) for name, info in symbols.items() if info.is_input]
    pure_inputs = [name for name, info in symbols.items() if info.kind == "in"]
    total_bits = sum(width for _, width in input_signals)

    if total_bits <= EXHAUSTIVE_BIT_LIMIT:
        assignments = []
        for word in range(1 << total_bits):
            values, shift = {}, 0
            for name, width in input_signals:
                values[name] = (word >> shift) & ((1 << width) - 1)
                shift += width
            assignments.append(values)
        plan = f"exhaustive over {len(assignments)} assignments"
    else:
        rng = random.Random(args.seed)
        assignments = [{name: rng.randrange(1 << width) for name, width in input_signals}
                       for _ in range(args.samples)]
        plan = f"{args.samples} random assignments (seed {args.seed})"

    modes = [_parse_mode(args.mode)] if args.mode else list(SynthesisMode)
    total_failures = 0
    for mode in modes:
        failures = 0
        result = synthesize(program, mode, SynthesisSettings(args.max_lines))
        for values in assignments:
            want = interpret(program, values).final_state
            word = run(result.circuit, embed_inputs(result.binding, values, result.circuit.line_count))
            got = extract_outputs(result.binding, word)
            wrong = [name for name, value in got.items() if want[name] != value]
            if mode is SynthesisMode.LINE_AWARE:
                wrong += [name for name in pure_inputs
                          if extract_signal(result.binding, word, name) != values[name]]
            if wrong:
                failures += 1
                print(f"{mode.value}: mismatch on {values}: signals {sorted(set(wrong))}", file=sys.stderr)
        print(f"{mode.value}: {plan}: {'FAIL' if failures else 'ok'}")
        total_failures += failures
    return EXIT_DIAGNOSTICS if total_failures else EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port or int(os.environ.get("SYREC_PORT", DEFAULT_PORT))
    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syrec", description="SyReC reversible-circuit compiler")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, mode_default: str | None = "line-aware",
               mode_choices: tuple[str, ...] = ("cost-aware", "line-aware")) -> None:
        p.add_argument("input", help="SyReC source file (.syrec)")
        p.add_argument("--mode", choices=mode_choices, default=mode_default,
                       help="synthesis strategy")
        p.add_argument("--width", type=int, default=32, help="default signal width when omitted")
        p.add_argument("--max-lines", type=int, default=4096, help="circuit line budget")

    p = sub.add_parser("synth", help="synthesize a circuit and write .real output")
    common(p)
    p.add_argument("-o", "--output", help="output .real path (default: input with .real suffix)")
    p.add_argument("--stats", help="also write the stats JSON to this path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sim", help="simulate the synthesized circuit")
    common(p)
    p.add_argument("--set", action="append", metavar="NAME=VALUE",
                   help="assign an input signal (repeatable)")
    p.add_argument("--oracle", action="store_true",
                   help="also run the reference evaluator and compare")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("cost", help="print cost reports")
    common(p, mode_default="both", mode_choices=("cost-aware", "line-aware", "both"))
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("check", help="compare circuit behaviour against the reference evaluator")
    common(p, mode_default=None, mode_choices=("cost-aware", "line-aware"))
    p.add_argument("--samples", type=int, default=256, help="random samples when inputs exceed "
                   f"{EXHAUSTIVE_BIT_LIMIT} bits")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("serve", help="run the HTTP service / playground backend")
    p.add_argument("--port", type=int, default=None, help="port (default: $SYREC_PORT or 8080)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", default=None, help="directory with playground assets for GET /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
