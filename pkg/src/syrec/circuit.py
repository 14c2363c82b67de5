"""Reversible-circuit intermediate representation.

A circuit is an ordered list of multiple-controlled Toffoli (MCT) and
multiple-controlled Fredkin (MCF) gates over named lines. Controls are
positive-polarity only. Bit 0 of a multi-bit signal always maps to the
lowest-indexed of its lines.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable


MCT = "mct"
MCF = "mcf"


@dataclass(frozen=True)
class Gate:
    kind: str                     # "mct" | "mcf"
    controls: tuple[int, ...]     # sorted, positive polarity
    targets: tuple[int, ...]      # 1 line for mct, 2 for mcf

    def apply(self, word: int) -> int:
        """Classical action on a bit word (bit i = line i)."""
        for c in self.controls:
            if not (word >> c) & 1:
                return word
        if self.kind == MCT:
            return word ^ (1 << self.targets[0])
        a, b = self.targets
        if ((word >> a) & 1) != ((word >> b) & 1):
            return word ^ ((1 << a) | (1 << b))
        return word


def mct(controls, target: int) -> Gate:
    return Gate(MCT, tuple(sorted(controls)), (target,))


def mcf(controls, target_a: int, target_b: int) -> Gate:
    return Gate(MCF, tuple(sorted(controls)), tuple(sorted((target_a, target_b))))


@dataclass
class Line:
    index: int
    label: str
    is_constant: bool = False     # added by synthesis, initialized to 0
    is_garbage: bool = False      # final value is not a declared output
    input_name: str | None = None
    output_name: str | None = None


class Circuit:
    """Ordered gate list over metadata-carrying lines. Gates are immutable;
    appending never touches earlier gates."""

    def __init__(self) -> None:
        self.lines: list[Line] = []
        self.gates: list[Gate] = []

    @property
    def line_count(self) -> int:
        return len(self.lines)

    def add_line(self, label: str, is_constant: bool = False,
                 input_name: str | None = None, output_name: str | None = None) -> int:
        index = len(self.lines)
        self.lines.append(Line(index, label, is_constant, False, input_name, output_name))
        return index

    def append_gate(self, gate: Gate) -> None:
        n = len(self.lines)
        if gate.kind not in (MCT, MCF):
            raise ValueError(f"unknown gate kind '{gate.kind}'")
        want = 1 if gate.kind == MCT else 2
        if len(gate.targets) != want:
            raise ValueError(f"{gate.kind} gate needs {want} target(s), got {len(gate.targets)}")
        if len(set(gate.targets)) != len(gate.targets):
            raise ValueError("duplicate target line")
        for idx in gate.controls + gate.targets:
            if not 0 <= idx < n:
                raise ValueError(f"line index {idx} out of range (circuit has {n} lines)")
        if set(gate.controls) & set(gate.targets):
            raise ValueError("control equals target")
        self.gates.append(gate)

    def append_mct(self, controls, target: int) -> None:
        self.append_gate(mct(controls, target))

    def append_mcf(self, controls, target_a: int, target_b: int) -> None:
        self.append_gate(mcf(controls, target_a, target_b))

    def extend(self, gates) -> None:
        for gate in gates:
            self.append_gate(gate)

    def copy(self) -> "Circuit":
        dup = Circuit()
        dup.lines = [replace(line) for line in self.lines]
        dup.gates = list(self.gates)
        return dup

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.lines == other.lines and self.gates == other.gates

    def __repr__(self) -> str:
        return f"Circuit({len(self.lines)} lines, {len(self.gates)} gates)"


def reverse_circuit(circuit: Circuit) -> Circuit:
    """Gate order reversed; MCT and MCF are self-inverse, so the result
    composes with the original to the identity permutation."""
    rev = circuit.copy()
    rev.gates = list(reversed(circuit.gates))
    return rev


def concatenate(first: Circuit, second: Circuit) -> Circuit:
    """First circuit followed by the second; line metadata from the first."""
    if first.line_count != second.line_count:
        raise ValueError("circuits differ in line count")
    out = first.copy()
    out.extend(second.gates)
    return out


# ------------------------------------------------------------------ cost model

@dataclass(frozen=True)
class CostModel:
    """Per-gate elementary-operation counts as a function of control count."""

    mct_cost: Callable[[int], int]
    mcf_cost: Callable[[int], int]


def _default_mct_cost(controls: int) -> int:
    if controls <= 1:
        return 1
    if controls == 2:
        return 5
    return (1 << (controls + 1)) - 3


def _default_mcf_cost(controls: int) -> int:
    # swap = 3 CNOTs; a controlled swap is a Toffoli conjugated by CNOTs
    return 2 + _default_mct_cost(controls + 1)


DEFAULT_COST_MODEL = CostModel(_default_mct_cost, _default_mcf_cost)


@dataclass(frozen=True)
class CircuitStats:
    line_count: int
    constant_line_count: int
    garbage_count: int
    gate_count: int
    quantum_cost: int


def statistics(circuit: Circuit, model: CostModel = DEFAULT_COST_MODEL) -> CircuitStats:
    cost = 0
    for gate in circuit.gates:
        c = len(gate.controls)
        cost += model.mct_cost(c) if gate.kind == MCT else model.mcf_cost(c)
    return CircuitStats(
        line_count=len(circuit.lines),
        constant_line_count=sum(1 for l in circuit.lines if l.is_constant),
        garbage_count=sum(1 for l in circuit.lines if l.is_garbage),
        gate_count=len(circuit.gates),
        quantum_cost=cost,
    )


# ----------------------------------------------------------------- permutation

MAX_ENUM_LINES = 20


def compile_gates(circuit: Circuit) -> list[tuple]:
    """Precompute mask form of the gate list for fast word application."""
    compiled = []
    for gate in circuit.gates:
        cmask = 0
        for c in gate.controls:
            cmask |= 1 << c
        if gate.kind == MCT:
            compiled.append((cmask, 1 << gate.targets[0], -1, -1))
        else:
            a, b = gate.targets
            compiled.append((cmask, (1 << a) | (1 << b), a, b))
    return compiled


def apply_compiled(compiled: list[tuple], word: int) -> int:
    for cmask, tmask, a, b in compiled:
        if word & cmask == cmask:
            if a < 0:
                word ^= tmask
            elif ((word >> a) & 1) != ((word >> b) & 1):
                word ^= tmask
    return word


def permutation(circuit: Circuit) -> list[int]:
    """Output word for every input word 0..2^n-1; a permutation for any
    well-formed circuit. Guarded to n <= 20 lines."""
    n = len(circuit.lines)
    if n > MAX_ENUM_LINES:
        raise ValueError(f"permutation enumeration limited to {MAX_ENUM_LINES} lines, circuit has {n}")
    compiled = compile_gates(circuit)
    return [apply_compiled(compiled, word) for word in range(1 << n)]
