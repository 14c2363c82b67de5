"""RevLib `.real` serialization and machine-readable statistics.

Dialect: version 2.0, MCT gates as `t<k>` and MCF gates as `f<k>` where k
counts every touched line. Variable names are label-derived, sanitized
(dots become underscores) and uniquified; the original labels are recorded
in `# map var=label` comment lines so parsing restores them exactly.
Input/output names are emitted quoted; a bare variable name in `.inputs` or
`.outputs` means the line has no such name. Unsupported directives are
rejected loudly rather than skipped.
"""

from __future__ import annotations

import json
import re

from .circuit import MCF, MCT, Circuit, Gate, CircuitStats
from .diagnostics import RealFormatError


_REQUIRED_DIRECTIVES = (".version", ".numvars", ".variables", ".inputs", ".outputs",
                        ".constants", ".garbage")


def _sanitize(label: str) -> str:
    name = re.sub(r"[^A-Za-z0-9_]", "_", label)
    if not name or name[0].isdigit():
        name = "_" + name
    return name


def _variable_names(circuit: Circuit) -> list[str]:
    names: list[str] = []
    used: set[str] = set()
    for line in circuit.lines:
        if not line.label:
            raise RealFormatError(f"line {line.index} has an empty label")
        base = _sanitize(line.label)
        name = base
        suffix = 2
        while name in used:
            name = f"{base}_{suffix}"
            suffix += 1
        used.add(name)
        names.append(name)
    return names


def emit_real(circuit: Circuit) -> str:
    """Deterministic `.real` text for a circuit."""
    variables = _variable_names(circuit)
    out: list[str] = []
    for line, var in zip(circuit.lines, variables):
        if var != line.label:
            out.append(f"# map {var}={line.label}")
    out.append(".version 2.0")
    out.append(f".numvars {len(circuit.lines)}")
    out.append(".variables " + " ".join(variables))
    inputs = [f'"{line.input_name}"' if line.input_name is not None else var
              for line, var in zip(circuit.lines, variables)]
    outputs = [f'"{line.output_name}"' if line.output_name is not None else var
               for line, var in zip(circuit.lines, variables)]
    out.append(".inputs " + " ".join(inputs))
    out.append(".outputs " + " ".join(outputs))
    out.append(".constants " + "".join("0" if line.is_constant else "-" for line in circuit.lines))
    out.append(".garbage " + "".join("1" if line.is_garbage else "-" for line in circuit.lines))
    out.append(".begin")
    for gate in circuit.gates:
        mnemonic = "t" if gate.kind == MCT else "f"
        touched = list(gate.controls) + list(gate.targets)
        out.append(f"{mnemonic}{len(touched)} " + " ".join(variables[i] for i in touched))
    out.append(".end")
    return "\n".join(out) + "\n"


def _split_labels(text: str, lineno: int) -> list[tuple[str, bool]]:
    """Whitespace-split honoring double quotes; returns (token, was_quoted)."""
    tokens: list[tuple[str, bool]] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        if text[i] == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise RealFormatError(f"line {lineno}: unterminated quoted name")
            tokens.append((text[i + 1:end], True))
            i = end + 1
        else:
            j = i
            while j < n and not text[j].isspace():
                j += 1
            tokens.append((text[i:j], False))
            i = j
    return tokens


def parse_real(text: str) -> Circuit:
    """Parse a `.real` document back into a circuit; emit_real(parse_real(t))
    reproduces structurally equal circuits for everything emit_real wrote."""
    label_map: dict[str, str] = {}
    directives: dict[str, tuple[str, int]] = {}
    gate_rows: list[tuple[str, list[str], int]] = []
    in_gates = False
    ended = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = re.match(r"#\s*map\s+(\S+)=(.*)$", line)
            if match:
                label_map[match.group(1)] = match.group(2)
            continue
        if line == ".begin":
            if in_gates:
                raise RealFormatError(f"line {lineno}: nested .begin")
            in_gates = True
            continue
        if line == ".end":
            if not in_gates:
                raise RealFormatError(f"line {lineno}: .end without .begin")
            in_gates = False
            ended = True
            continue
        if in_gates:
            parts = line.split()
            gate_rows.append((parts[0], parts[1:], lineno))
            continue
        if line.startswith("."):
            name, _, rest = line.partition(" ")
            if name not in _REQUIRED_DIRECTIVES:
                raise RealFormatError(f"line {lineno}: unsupported directive '{name}'")
            if name in directives:
                raise RealFormatError(f"line {lineno}: duplicate directive '{name}'")
            directives[name] = (rest.strip(), lineno)
            continue
        raise RealFormatError(f"line {lineno}: unexpected content '{line}'")

    if in_gates or (gate_rows and not ended):
        raise RealFormatError("unterminated gate section (missing .end)")
    for name in _REQUIRED_DIRECTIVES:
        if name not in directives:
            raise RealFormatError(f"missing directive '{name}'")
    if not ended:
        raise RealFormatError("unterminated gate section (missing .begin/.end)")

    version, lineno = directives[".version"]
    if version != "2.0":
        raise RealFormatError(f"line {lineno}: unsupported version '{version}'")
    numvars_text, lineno = directives[".numvars"]
    try:
        numvars = int(numvars_text)
    except ValueError:
        raise RealFormatError(f"line {lineno}: invalid .numvars '{numvars_text}'") from None

    variables = directives[".variables"][0].split()
    if len(variables) != numvars:
        raise RealFormatError(
            f"line {directives['.variables'][1]}: expected {numvars} variables, found {len(variables)}")
    if len(set(variables)) != numvars:
        raise RealFormatError(f"line {directives['.variables'][1]}: duplicate variable name")

    inputs = _split_labels(directives[".inputs"][0], directives[".inputs"][1])
    outputs = _split_labels(directives[".outputs"][0], directives[".outputs"][1])
    for what, tokens in (("inputs", inputs), ("outputs", outputs)):
        if len(tokens) != numvars:
            raise RealFormatError(f"expected {numvars} {what}, found {len(tokens)}")

    constants, lineno = directives[".constants"]
    if len(constants) != numvars or set(constants) - {"0", "-"}:
        raise RealFormatError(f"line {lineno}: .constants must be {numvars} characters over 0/-")
    garbage, lineno = directives[".garbage"]
    if len(garbage) != numvars or set(garbage) - {"1", "-"}:
        raise RealFormatError(f"line {lineno}: .garbage must be {numvars} characters over 1/-")

    circuit = Circuit()
    index_of: dict[str, int] = {}
    for i, var in enumerate(variables):
        in_tok, in_quoted = inputs[i]
        out_tok, out_quoted = outputs[i]
        circuit.add_line(
            label=label_map.get(var, var),
            is_constant=constants[i] == "0",
            input_name=in_tok if in_quoted else None,
            output_name=out_tok if out_quoted else None,
        )
        circuit.lines[i].is_garbage = garbage[i] == "1"
        index_of[var] = i

    for mnemonic, names, lineno in gate_rows:
        match = re.fullmatch(r"([tf])(\d+)", mnemonic)
        if not match:
            raise RealFormatError(f"line {lineno}: unknown gate mnemonic '{mnemonic}'")
        kind = MCT if match.group(1) == "t" else MCF
        size = int(match.group(2))
        if len(names) != size:
            raise RealFormatError(f"line {lineno}: gate '{mnemonic}' names {len(names)} lines, expected {size}")
        if len(set(names)) != len(names):
            raise RealFormatError(f"line {lineno}: duplicate line in gate")
        try:
            indices = [index_of[name] for name in names]
        except KeyError as exc:
            raise RealFormatError(f"line {lineno}: unknown line {exc.args[0]!r}") from None
        target_count = 1 if kind == MCT else 2
        if size < target_count:
            raise RealFormatError(f"line {lineno}: gate '{mnemonic}' has no room for targets")
        controls = tuple(sorted(indices[:size - target_count]))
        targets = tuple(sorted(indices[size - target_count:]))
        try:
            circuit.append_gate(Gate(kind, controls, targets))
        except ValueError as exc:
            raise RealFormatError(f"line {lineno}: {exc}") from None
    return circuit


def emit_stats(stats: CircuitStats, mode: str, program_name: str) -> str:
    """Flat JSON cost report with stable key order."""
    return json.dumps({
        "program": program_name,
        "mode": mode,
        "lines": stats.line_count,
        "constants": stats.constant_line_count,
        "garbage": stats.garbage_count,
        "gates": stats.gate_count,
        "quantumCost": stats.quantum_cost,
    })
