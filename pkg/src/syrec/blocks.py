"""Reversible building blocks shared by both synthesis strategies.

Every block emits gates into an accumulating circuit under a control
context: a set of extra control lines prefixed onto each gate that carries
the block's effect. Context lines must never overlap a block's target
lines; that is checked at emission.

Operands are per-bit vectors whose slots are either circuit lines or
constant bits, which subsumes plain line vectors and constants and makes
constant shifts pure re-wiring.

The adder is an in-place controlled-increment cascade: adding a bit k means
incrementing the target's upper slice under that bit, realized with
growing-control Toffoli staircases. It needs no lines beyond the operands
and the context, and the subtractor is its exact gate-list reversal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, mcf, mct
from .diagnostics import SynthesisError


ControlContext = frozenset  # of line indices


@dataclass(frozen=True)
class Operand:
    """Bit vector, LSB first: each slot is a line index or a constant bit."""

    bits: tuple[int | None, ...]   # None marks a constant bit
    const: int = 0                 # packed constant bits for the None slots

    @classmethod
    def lines(cls, indices) -> "Operand":
        return cls(tuple(indices))

    @classmethod
    def constant(cls, value: int, width: int) -> "Operand":
        if not 0 <= value < (1 << width):
            raise SynthesisError(f"constant {value} does not fit in {width} bit(s)")
        return cls((None,) * width, value)

    @property
    def width(self) -> int:
        return len(self.bits)

    def bit(self, k: int) -> int | None:
        """Line index of bit k, or None when constant."""
        return self.bits[k]

    def const_bit(self, k: int) -> int:
        return (self.const >> k) & 1

    def line_set(self) -> set[int]:
        return {b for b in self.bits if b is not None}

    @property
    def is_all_lines(self) -> bool:
        return all(b is not None for b in self.bits)

    @property
    def is_all_const(self) -> bool:
        return all(b is None for b in self.bits)

    def shifted_left(self, amount: int) -> "Operand":
        if amount >= self.width:
            return Operand.constant(0, self.width)
        bits = (None,) * amount + self.bits[: self.width - amount]
        const = (self.const << amount) & ((1 << self.width) - 1)
        return Operand(bits, const)

    def shifted_right(self, amount: int) -> "Operand":
        if amount >= self.width:
            return Operand.constant(0, self.width)
        bits = self.bits[amount:] + (None,) * amount
        const = self.const >> amount
        return Operand(bits, const)

    def extended(self, extra: int) -> "Operand":
        """Zero-extended by `extra` constant bits."""
        return Operand(self.bits + (None,) * extra, self.const)


class LineAllocator:
    """Hands out constant (zero-initialized) circuit lines.

    `fresh` lines are permanent ancillas that keep their values; `acquire`
    draws from a reusable pool whose lines must be returned uncomputed
    (back at zero), lowest-indexed free line first.
    """

    def __init__(self, circuit: Circuit, max_lines: int = 4096, label_prefix: str = "const"):
        self.circuit = circuit
        self.max_lines = max_lines
        self.label_prefix = label_prefix
        self.free: list[int] = []
        self.pool_lines: set[int] = set()
        self._counter = 0

    def _new_line(self) -> int:
        if self.circuit.line_count >= self.max_lines:
            raise SynthesisError(f"line budget of {self.max_lines} lines exceeded")
        index = self.circuit.add_line(f"{self.label_prefix}_{self._counter}", is_constant=True)
        self._counter += 1
        return index

    def fresh(self, count: int) -> list[int]:
        return [self._new_line() for _ in range(count)]

    def acquire(self, count: int) -> list[int]:
        taken: list[int] = []
        self.free.sort()
        while self.free and len(taken) < count:
            taken.append(self.free.pop(0))
        while len(taken) < count:
            line = self._new_line()
            self.pool_lines.add(line)
            taken.append(line)
        return taken

    def release(self, lines) -> None:
        for line in lines:
            if line not in self.pool_lines:
                raise SynthesisError(f"line {line} was not acquired from the pool")
            if line in self.free:
                raise SynthesisError(f"line {line} released twice")
            self.free.append(line)

    @property
    def pool_size(self) -> int:
        return len(self.pool_lines)


# ------------------------------------------------------------------- emission

def _emit_mct(circuit: Circuit, ctx: frozenset, extra_controls, target: int) -> None:
    controls = set(ctx) | set(extra_controls)
    if target in controls:
        raise SynthesisError(f"control context overlaps target line {target}")
    circuit.append_gate(mct(sorted(controls), target))


def _emit_mcf(circuit: Circuit, ctx: frozenset, a: int, b: int) -> None:
    controls = set(ctx)
    if controls & {a, b}:
        raise SynthesisError("control context overlaps swap targets")
    circuit.append_gate(mcf(sorted(controls), a, b))


def _check_disjoint(ctx: frozenset, target: list[int], *operands: Operand) -> None:
    tset = set(target)
    if len(tset) != len(target):
        raise SynthesisError("duplicate target line")
    if tset & set(ctx):
        raise SynthesisError("target lines overlap the control context")
    for operand in operands:
        if tset & operand.line_set():
            raise SynthesisError("target lines overlap an operand")


# --------------------------------------------------------------------- blocks

def build_xor_assign(circuit: Circuit, ctx: frozenset, target: list[int], source: Operand) -> None:
    """target ^= source under ctx; constant source bits emit gates on 1-bits only."""
    if len(target) != source.width:
        raise SynthesisError(f"xor width mismatch: {len(target)} vs {source.width}")
    _check_disjoint(ctx, target, source)
    for k in range(source.width):
        line = source.bit(k)
        if line is None:
            if source.const_bit(k):
                _emit_mct(circuit, ctx, (), target[k])
        else:
            _emit_mct(circuit, ctx, (line,), target[k])


def _staircase(circuit: Circuit, ctx: frozenset, controls, target: list[int]) -> None:
    """Increment of the target slice by 1, conditioned on ctx and `controls`."""
    base = set(controls)
    for j in range(len(target) - 1, 0, -1):
        _emit_mct(circuit, ctx, base | set(target[:j]), target[j])
    _emit_mct(circuit, ctx, base, target[0])


def build_add_assign(circuit: Circuit, ctx: frozenset, target: list[int], addend: Operand) -> None:
    """target = (target + addend) mod 2^w under ctx, in place.

    Uses no lines beyond target, addend, and ctx: each addend bit k drives a
    controlled increment of target[k..w-1].
    """
    if len(target) != addend.width:
        raise SynthesisError(f"add width mismatch: {len(target)} vs {addend.width}")
    _check_disjoint(ctx, target, addend)
    for k in range(addend.width):
        line = addend.bit(k)
        if line is None:
            if addend.const_bit(k):
                _staircase(circuit, ctx, (), target[k:])
        else:
            _staircase(circuit, ctx, (line,), target[k:])


def build_sub_assign(circuit: Circuit, ctx: frozenset, target: list[int], subtrahend: Operand) -> None:
    """target = (target - subtrahend) mod 2^w under ctx: the adder reversed."""
    start = len(circuit.gates)
    build_add_assign(circuit, ctx, target, subtrahend)
    circuit.gates[start:] = circuit.gates[start:][::-1]


def build_increment(circuit: Circuit, ctx: frozenset, target: list[int]) -> None:
    """target = (target + 1) mod 2^w under ctx (classic staircase)."""
    _check_disjoint(ctx, target)
    _staircase(circuit, ctx, (), target)


def build_decrement(circuit: Circuit, ctx: frozenset, target: list[int]) -> None:
    start = len(circuit.gates)
    build_increment(circuit, ctx, target)
    circuit.gates[start:] = circuit.gates[start:][::-1]


def build_bitwise_not(circuit: Circuit, ctx: frozenset, target: list[int]) -> None:
    _check_disjoint(ctx, target)
    for line in target:
        _emit_mct(circuit, ctx, (), line)


def build_swap(circuit: Circuit, ctx: frozenset, a: list[int], b: list[int]) -> None:
    """One controlled-Fredkin per bit pair."""
    if len(a) != len(b):
        raise SynthesisError(f"swap width mismatch: {len(a)} vs {len(b)}")
    if set(a) & set(b):
        raise SynthesisError("swap sides overlap")
    _check_disjoint(ctx, list(a) + list(b))
    for x, y in zip(a, b):
        _emit_mcf(circuit, ctx, x, y)


# ------------------------------------------------------- boolean result blocks

# Width-1 operators as XOR-of-products over (left, right): each term is a
# subset of {1, l, r, lr}, emitted as one MCT onto the result line.
_BIT_TERMS: dict[str, tuple[tuple[bool, bool], ...]] = {
    # term (use_l, use_r); the constant term is (False, False)
    "<":  ((False, True), (True, True)),                    # r ^ lr
    ">":  ((True, False), (True, True)),                    # l ^ lr
    "=":  ((True, False), (False, True), (False, False)),   # l ^ r ^ 1
    "!=": ((True, False), (False, True)),                   # l ^ r
    "<=": ((True, False), (True, True), (False, False)),    # l ^ lr ^ 1
    ">=": ((False, True), (True, True), (False, False)),    # r ^ lr ^ 1
    "&":  ((True, True),),                                  # lr
    "&&": ((True, True),),
    "|":  ((True, False), (False, True), (True, True)),     # l ^ r ^ lr
    "||": ((True, False), (False, True), (True, True)),
}


def _emit_bit_op(circuit: Circuit, ctx: frozenset, op: str,
                 left: Operand, right: Operand, k: int, result: int) -> None:
    """result ^= op(left[k], right[k]) under ctx, for a single bit position."""
    for use_l, use_r in _BIT_TERMS[op]:
        controls: set[int] = set()
        on = True
        for use, operand in ((use_l, left), (use_r, right)):
            if not use:
                continue
            line = operand.bit(k)
            if line is None:
                on = on and bool(operand.const_bit(k))
            else:
                controls.add(line)
        if on:
            _emit_mct(circuit, ctx, controls, result)


def build_binary_onto(circuit: Circuit, ctx: frozenset, op: str, left: Operand, right: Operand,
                      result: list[int], allocator: LineAllocator) -> None:
    """result ^= op(left, right) under ctx; operand lines are restored.

    The result lines must be zero-initialized and disjoint from the operands
    and the context (caller contract). Result width is 1 for comparisons and
    logic connectives, the operand width for & and |. Multi-bit comparisons
    borrow scratch lines from the allocator and return them uncomputed.
    """
    if left.width != right.width:
        raise SynthesisError(f"operand width mismatch: {left.width} vs {right.width}")
    _check_disjoint(ctx, result, left, right)
    width = left.width

    if op in ("&", "|"):
        if len(result) != width:
            raise SynthesisError(f"'{op}' needs a {width}-bit result, got {len(result)}")
        for k in range(width):
            _emit_bit_op(circuit, ctx, op, left, right, k, result[k])
        return

    if op in ("&&", "||"):
        if width != 1 or len(result) != 1:
            raise SynthesisError(f"'{op}' operates on width-1 operands")
        _emit_bit_op(circuit, ctx, op, left, right, 0, result[0])
        return

    if op not in _BIT_TERMS and op not in ("=", "!=", "<", ">", "<=", ">="):
        raise SynthesisError(f"unsupported operator '{op}'")
    if len(result) != 1:
        raise SynthesisError(f"comparison '{op}' needs a 1-bit result")

    if width == 1:
        _emit_bit_op(circuit, ctx, op, left, right, 0, result[0])
        return

    if op in ("=", "!="):
        _build_equality(circuit, ctx, op, left, right, result[0], allocator)
    else:
        _build_less_than(circuit, ctx, op, left, right, result[0], allocator)


def _build_equality(circuit: Circuit, ctx: frozenset, op: str,
                    left: Operand, right: Operand, result: int, allocator: LineAllocator) -> None:
    """Difference bits on scratch, inverted, then one wide MCT; uncomputed after."""
    width = left.width
    scratch = allocator.acquire(width)
    build_xor_assign(circuit, frozenset(), scratch, left)
    build_xor_assign(circuit, frozenset(), scratch, right)
    build_bitwise_not(circuit, frozenset(), scratch)
    if op == "!=":
        _emit_mct(circuit, ctx, (), result)
    _emit_mct(circuit, ctx, scratch, result)
    build_bitwise_not(circuit, frozenset(), scratch)
    build_xor_assign(circuit, frozenset(), scratch, right)
    build_xor_assign(circuit, frozenset(), scratch, left)
    allocator.release(scratch)


def _build_less_than(circuit: Circuit, ctx: frozenset, op: str,
                     left: Operand, right: Operand, result: int, allocator: LineAllocator) -> None:
    """Subtract-compare-uncompute: copy the smaller-side candidate into a
    zero-extended scratch register, subtract, and read the borrow bit."""
    if op == "<":
        a, b, negate = left, right, False
    elif op == ">":
        a, b, negate = right, left, False
    elif op == ">=":
        a, b, negate = left, right, True    # >= is not-<
    else:
        a, b, negate = right, left, True    # <= is not->
    width = a.width
    scratch = allocator.acquire(width + 1)
    build_xor_assign(circuit, frozenset(), scratch[:width], a)
    build_sub_assign(circuit, frozenset(), scratch, b.extended(1))
    if negate:
        _emit_mct(circuit, ctx, (), result)
    _emit_mct(circuit, ctx, (scratch[width],), result)
    build_add_assign(circuit, frozenset(), scratch, b.extended(1))
    build_xor_assign(circuit, frozenset(), scratch[:width], a)
    allocator.release(scratch)
