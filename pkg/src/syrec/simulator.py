"""Bit-word execution of reversible circuits.

Words are plain integers with bit i carrying line i, so circuits beyond 64
lines simulate with identical semantics. Truth-table enumeration is in
ascending input order and check_reversible doubles as an IR integrity
check: well-formed MCT/MCF cascades are always bijective.
"""

from __future__ import annotations

from .circuit import MAX_ENUM_LINES, Circuit, Gate, apply_compiled, compile_gates


def apply_gate(word: int, gate: Gate) -> int:
    """MCT flips its target iff all controls are 1; MCF swaps its two targets."""
    return gate.apply(word)


def run(circuit: Circuit, word: int) -> int:
    """Left fold of apply_gate over the gate list."""
    if not 0 <= word < (1 << circuit.line_count):
        raise ValueError(f"word {word} does not fit {circuit.line_count} lines")
    return apply_compiled(compile_gates(circuit), word)


def truth_table(circuit: Circuit) -> list[int]:
    """Output word for each input word, ascending; equals the permutation."""
    n = circuit.line_count
    if n > MAX_ENUM_LINES:
        raise ValueError(f"truth-table enumeration limited to {MAX_ENUM_LINES} lines, circuit has {n}")
    compiled = compile_gates(circuit)
    return [apply_compiled(compiled, word) for word in range(1 << n)]


def check_reversible(circuit: Circuit) -> tuple[bool, tuple[int, int] | None]:
    """True iff the induced map is a bijection; on failure returns two
    colliding input words as a witness."""
    n = circuit.line_count
    if n > MAX_ENUM_LINES:
        raise ValueError(f"reversibility check limited to {MAX_ENUM_LINES} lines, circuit has {n}")
    compiled = compile_gates(circuit)
    first_seen: dict[int, int] = {}
    for word in range(1 << n):
        image = apply_compiled(compiled, word)
        if image in first_seen:
            return False, (first_seen[image], word)
        first_seen[image] = word
    return True, None


def dump_truth_table(circuit: Circuit) -> str:
    """One `input -> output` line per word, binary, LSB rightmost."""
    n = circuit.line_count
    rows = []
    for word, image in enumerate(truth_table(circuit)):
        rows.append(f"{word:0{n}b} -> {image:0{n}b}")
    return "\n".join(rows)
