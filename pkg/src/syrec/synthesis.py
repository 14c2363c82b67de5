"""Lowering of elaborated SyReC programs to reversible circuits.

Two strategies share one statement walker and differ in how expression
values are materialized:

* cost-aware: every operator node computes its value into fresh constant
  lines, bottom-up; the intermediates are never uncomputed and end up as
  garbage. Gate counts stay moderate, line counts grow.
* line-aware: invertible operators (+, -, ^) mutate their left operand's
  existing lines in place, the assignment is applied, and the mutation is
  replayed inverted, restoring the operand. Non-invertible operators fall
  back to a small reusable pool of helper lines that are uncomputed and
  returned after use. Line counts stay minimal, gate counts grow.

Conditions are handled by control-context conjugation: the then-branch is
emitted under the condition line, an uncontrolled NOT flips that line, the
else-branch is emitted under it, and a second NOT restores it. A condition
that is already a plain signal bit is used directly whenever the branches
neither write that bit nor read it in the else branch (where the
conjugation holds it inverted); otherwise it is copied to an owned line
first.

Expression evaluation itself is never gated by the enclosing context; only
the effect gates of each statement carry it. Intermediates are garbage or
get uncomputed either way, so gating them would only add controls.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from . import ast
from .analyzer import ModuleSymbols, expr_width
from .blocks import (
    LineAllocator,
    Operand,
    build_add_assign,
    build_binary_onto,
    build_bitwise_not,
    build_decrement,
    build_increment,
    build_sub_assign,
    build_swap,
    build_xor_assign,
)
from .circuit import DEFAULT_COST_MODEL, Circuit, CircuitStats, statistics
from .diagnostics import SynthesisError
from .elaborate import ElaboratedProgram
from .interpreter import SignalState


class SynthesisMode(enum.Enum):
    COST_AWARE = "cost-aware"
    LINE_AWARE = "line-aware"

    @classmethod
    def from_name(cls, name: str) -> "SynthesisMode":
        for mode in cls:
            if mode.value == name:
                return mode
        raise ValueError(f"unknown synthesis mode '{name}' (expected 'cost-aware' or 'line-aware')")


@dataclass(frozen=True)
class SynthesisSettings:
    max_lines: int = 4096


@dataclass(frozen=True)
class BoundSignal:
    kind: str                  # in | out | inout | wire | state
    lines: tuple[int, ...]     # LSB first

    @property
    def width(self) -> int:
        return len(self.lines)

    @property
    def is_input(self) -> bool:
        return self.kind in (ast.IN, ast.INOUT, ast.STATE)

    @property
    def is_output(self) -> bool:
        return self.kind in (ast.OUT, ast.INOUT, ast.STATE)


@dataclass(frozen=True)
class SignalBinding:
    """Entry-module signals mapped to circuit lines, plus final pool state."""

    signals: dict[str, BoundSignal]
    free_pool: tuple[int, ...] = ()

    def lines_of(self, name: str) -> tuple[int, ...]:
        return self.signals[name].lines


@dataclass(frozen=True)
class SynthesisResult:
    circuit: Circuit
    binding: SignalBinding
    stats: CircuitStats
    helper_pool_size: int = 0


@dataclass
class _Scope:
    lines: dict[str, tuple[int, ...]]
    symbols: ModuleSymbols


def _expr_read_accesses(expr: ast.Expression) -> list[ast.SignalAccess]:
    if isinstance(expr, ast.SignalRef):
        return [expr.access]
    if isinstance(expr, ast.Binary):
        return _expr_read_accesses(expr.left) + _expr_read_accesses(expr.right)
    if isinstance(expr, ast.Shift):
        return _expr_read_accesses(expr.operand)
    return []


class _Synthesizer:
    def __init__(self, program: ElaboratedProgram, mode: SynthesisMode, settings: SynthesisSettings):
        self.program = program
        self.mode = mode
        self.settings = settings
        self.circuit = Circuit()
        self.alloc = LineAllocator(self.circuit, settings.max_lines)
        self.dirty: set[int] = set()

    # ------------------------------------------------------------------ setup

    def run(self) -> SynthesisResult:
        entry = self.program.entry
        symbols = self.program.entry_symbols()
        scope_lines: dict[str, tuple[int, ...]] = {}
        for name, info in symbols.items():
            scope_lines[name] = self._add_signal_lines(name, info.kind, info.width)
        scope = _Scope(scope_lines, symbols)
        self.lower_body(entry.body, scope, frozenset())
        self._finalize_garbage()
        binding = SignalBinding(
            {name: BoundSignal(symbols[name].kind, lines) for name, lines in scope_lines.items()},
            tuple(sorted(self.alloc.free)),
        )
        return SynthesisResult(self.circuit, binding, statistics(self.circuit, DEFAULT_COST_MODEL),
                               self.alloc.pool_size)

    def _add_signal_lines(self, name: str, kind: str, width: int, qualifier: str = "") -> tuple[int, ...]:
        lines = []
        is_input = kind in (ast.IN, ast.INOUT, ast.STATE)
        is_output = kind in (ast.OUT, ast.INOUT, ast.STATE)
        for k in range(width):
            if self.circuit.line_count >= self.settings.max_lines:
                raise SynthesisError(f"line budget of {self.settings.max_lines} lines exceeded")
            label = f"{qualifier}{name}.{k}"
            lines.append(self.circuit.add_line(
                label,
                input_name=label if is_input and not qualifier else None,
                output_name=label if is_output and not qualifier else None,
            ))
        return tuple(lines)

    def _finalize_garbage(self) -> None:
        for line in self.circuit.lines:
            if line.output_name is None and line.index in self.dirty:
                line.is_garbage = True
            if line.input_name is not None and line.output_name is None and line.index in self.dirty:
                raise SynthesisError(f"internal error: input line {line.label} was left modified")

    # ------------------------------------------------------------- statements

    def lower_body(self, body, scope: _Scope, ctx: frozenset) -> None:
        for stmt in body:
            self.lower_stmt(stmt, scope, ctx)

    def lower_stmt(self, stmt: ast.Statement, scope: _Scope, ctx: frozenset) -> None:
        if isinstance(stmt, ast.Skip):
            return
        if isinstance(stmt, ast.Swap):
            a = self._access_lines(stmt.lhs, scope)
            b = self._access_lines(stmt.rhs, scope)
            build_swap(self.circuit, ctx, a, b)
            self.dirty.update(a)
            self.dirty.update(b)
            return
        if isinstance(stmt, ast.Unary):
            target = self._access_lines(stmt.target, scope)
            if stmt.op == "invert":
                build_bitwise_not(self.circuit, ctx, target)
            elif stmt.op == "increment":
                build_increment(self.circuit, ctx, target)
            else:
                build_decrement(self.circuit, ctx, target)
            self.dirty.update(target)
            return
        if isinstance(stmt, ast.Assign):
            self.lower_assign(stmt, scope, ctx)
            return
        if isinstance(stmt, ast.IfElse):
            self.lower_if(stmt, scope, ctx)
            return
        if isinstance(stmt, ast.Call):
            self.lower_call(stmt.module, stmt.args, scope, ctx, inverted=False)
            return
        if isinstance(stmt, ast.Uncall):
            self.lower_call(stmt.module, stmt.args, scope, ctx, inverted=True)
            return
        if isinstance(stmt, ast.ForLoop):
            raise SynthesisError("loops must be elaborated before synthesis")
        raise TypeError(f"unknown statement node {stmt!r}")

    def lower_assign(self, stmt: ast.Assign, scope: _Scope, ctx: frozenset) -> None:
        target = self._access_lines(stmt.lhs, scope)
        undo: list = []
        usage = self._leaf_usage(stmt.rhs, scope)
        operand = self.eval_expr(stmt.rhs, scope, undo, usage, hint=len(target), ctx=ctx)
        if stmt.op == "xor":
            build_xor_assign(self.circuit, ctx, target, operand)
        elif stmt.op == "add":
            build_add_assign(self.circuit, ctx, target, operand)
        else:
            build_sub_assign(self.circuit, ctx, target, operand)
        self.dirty.update(target)
        for fn in reversed(undo):
            fn()

    def lower_call(self, name: str, args, scope: _Scope, ctx: frozenset, inverted: bool) -> None:
        callee = self.program.program.module(name)
        if callee is None:
            raise SynthesisError(f"call target '{name}' not found")
        inner_lines: dict[str, tuple[int, ...]] = {}
        for formal, actual in zip(callee.params, args):
            inner_lines[formal.name] = scope.lines[actual]
        for local in callee.locals:
            inner_lines[local.name] = self._add_signal_lines(local.name, local.kind, local.width,
                                                             qualifier=f"{name}.")
        inner = _Scope(inner_lines, self.program.symbols[callee.name])
        if inverted:
            start = len(self.circuit.gates)
            self.lower_body(callee.body, inner, ctx)
            self.circuit.gates[start:] = self.circuit.gates[start:][::-1]
        else:
            self.lower_body(callee.body, inner, ctx)

    # -------------------------------------------------------------- condition

    def _touched_lines(self, body, scope: _Scope) -> set[int]:
        """Lines a branch may write, even transiently: statement targets,
        condition bits of nested branches (their NOT-conjugation flips the
        line), and every line of a call argument."""
        touched: set[int] = set()
        for stmt in body:
            if isinstance(stmt, ast.Swap):
                touched.update(self._access_lines(stmt.lhs, scope))
                touched.update(self._access_lines(stmt.rhs, scope))
            elif isinstance(stmt, ast.Unary):
                touched.update(self._access_lines(stmt.target, scope))
            elif isinstance(stmt, ast.Assign):
                touched.update(self._access_lines(stmt.lhs, scope))
            elif isinstance(stmt, ast.IfElse):
                for acc in _expr_read_accesses(stmt.cond) + _expr_read_accesses(stmt.fi_cond):
                    touched.update(self._access_lines(acc, scope))
                touched |= self._touched_lines(stmt.then_body, scope)
                touched |= self._touched_lines(stmt.else_body, scope)
            elif isinstance(stmt, (ast.Call, ast.Uncall)):
                for arg in stmt.args:
                    touched.update(scope.lines[arg])
        return touched

    def _read_lines(self, body, scope: _Scope) -> set[int]:
        """Lines whose values feed expression evaluation inside `body`."""
        reads: set[int] = set()
        for stmt in body:
            if isinstance(stmt, ast.Assign):
                for acc in _expr_read_accesses(stmt.rhs):
                    reads.update(self._access_lines(acc, scope))
            elif isinstance(stmt, ast.IfElse):
                for acc in _expr_read_accesses(stmt.cond) + _expr_read_accesses(stmt.fi_cond):
                    reads.update(self._access_lines(acc, scope))
                reads |= self._read_lines(stmt.then_body, scope)
                reads |= self._read_lines(stmt.else_body, scope)
            elif isinstance(stmt, (ast.Call, ast.Uncall)):
                for arg in stmt.args:
                    reads.update(scope.lines[arg])
        return reads

    def lower_if(self, stmt: ast.IfElse, scope: _Scope, ctx: frozenset) -> None:
        static = self._static_operand(stmt.cond, scope)
        if static is not None and static.is_all_const:
            body = stmt.then_body if static.const & 1 else stmt.else_body
            self.lower_body(body, scope, ctx)
            return

        if static is not None:
            cond_line = static.bits[0]
            # direct use needs the line stable across both branches AND unread
            # in the else branch, where the NOT-conjugation holds it inverted
            hazard = self._touched_lines(stmt.then_body, scope) \
                | self._touched_lines(stmt.else_body, scope) \
                | self._read_lines(stmt.else_body, scope)
            if cond_line not in hazard:
                self._conjugate_branches(stmt, scope, ctx, cond_line)
                return
            if self.mode is SynthesisMode.LINE_AWARE:
                t = self.alloc.acquire(1)[0]
                build_xor_assign(self.circuit, frozenset(), [t], Operand.lines([cond_line]))
                self._conjugate_branches(stmt, scope, ctx, t)
                fi_static = self._static_operand(stmt.fi_cond, scope)
                build_xor_assign(self.circuit, frozenset(), [t], Operand.lines([fi_static.bits[0]]))
                self.alloc.release([t])
            else:
                t = self.alloc.fresh(1)[0]
                self.dirty.add(t)
                build_xor_assign(self.circuit, frozenset(), [t], Operand.lines([cond_line]))
                self._conjugate_branches(stmt, scope, ctx, t)
            return

        # computed condition
        if self.mode is SynthesisMode.LINE_AWARE:
            t = self.alloc.acquire(1)[0]
            self._compute_cond_into(t, stmt.cond, scope, ctx)
            self._conjugate_branches(stmt, scope, ctx, t)
            self._compute_cond_into(t, stmt.fi_cond, scope, ctx)
            self.alloc.release([t])
        else:
            undo: list = []
            operand = self.eval_expr(stmt.cond, scope, undo, self._leaf_usage(stmt.cond, scope),
                                     hint=1, ctx=ctx)
            if undo:
                raise SynthesisError("internal error: cost-aware evaluation produced pending undos")
            if operand.is_all_const:
                # a shift can drop every live bit, degenerating to a constant
                body = stmt.then_body if operand.const & 1 else stmt.else_body
                self.lower_body(body, scope, ctx)
                return
            t = operand.bits[0]
            self._conjugate_branches(stmt, scope, ctx, t)

    def _compute_cond_into(self, t: int, expr: ast.Expression, scope: _Scope, ctx: frozenset) -> None:
        """t ^= expr, leaving every operand restored (line-aware).

        Binary roots compute straight onto t, sparing the helper line the
        generic route would take: boolean operators have a result-line block,
        and width-1 +, -, ^ all reduce to XOR modulo 2."""
        undo: list = []
        usage = self._leaf_usage(expr, scope)
        if isinstance(expr, ast.Binary) and expr.op not in ("+", "-", "^"):
            operand_width = (expr_width(expr.left, scope.symbols)
                             or expr_width(expr.right, scope.symbols) or 1)
            if expr.op in ast.LOGIC_OPS:
                operand_width = 1
            left = self.eval_expr(expr.left, scope, undo, usage, operand_width, ctx)
            right = self.eval_expr(expr.right, scope, undo, usage, operand_width, ctx)
            build_binary_onto(self.circuit, frozenset(), expr.op, left, right, [t], self.alloc)
        elif isinstance(expr, ast.Binary):
            left = self.eval_expr(expr.left, scope, undo, usage, 1, ctx)
            right = self.eval_expr(expr.right, scope, undo, usage, 1, ctx)
            build_xor_assign(self.circuit, frozenset(), [t], left)
            build_xor_assign(self.circuit, frozenset(), [t], right)
        else:
            operand = self.eval_expr(expr, scope, undo, usage, hint=1, ctx=ctx)
            build_xor_assign(self.circuit, frozenset(), [t], operand)
        for fn in reversed(undo):
            fn()

    def _conjugate_branches(self, stmt: ast.IfElse, scope: _Scope, ctx: frozenset, t: int) -> None:
        inner = ctx | {t}
        self.lower_body(stmt.then_body, scope, inner)
        self.circuit.append_mct((), t)
        self.lower_body(stmt.else_body, scope, inner)
        self.circuit.append_mct((), t)

    def _static_operand(self, expr: ast.Expression, scope: _Scope) -> Operand | None:
        """Operand for pure-wiring expressions (no gates needed), else None."""
        if isinstance(expr, ast.Constant):
            return Operand.constant(expr.value & 1, 1)
        if isinstance(expr, ast.SignalRef):
            lines = self._access_lines(expr.access, scope)
            return Operand.lines(lines) if len(lines) == 1 else None
        if isinstance(expr, ast.Shift):
            inner = self._static_operand_any(expr.operand, scope)
            if inner is None:
                return None
            amount = expr.amount.value if isinstance(expr.amount, ast.Constant) else None
            if amount is None:
                return None
            out = inner.shifted_left(amount) if expr.op == "<<" else inner.shifted_right(amount)
            return out if out.width == 1 else None
        return None

    def _static_operand_any(self, expr: ast.Expression, scope: _Scope) -> Operand | None:
        if isinstance(expr, ast.SignalRef):
            return Operand.lines(self._access_lines(expr.access, scope))
        if isinstance(expr, ast.Constant):
            return None   # width not known here; constant conditions fold earlier
        if isinstance(expr, ast.Shift) and isinstance(expr.amount, ast.Constant):
            inner = self._static_operand_any(expr.operand, scope)
            if inner is None:
                return None
            return inner.shifted_left(expr.amount.value) if expr.op == "<<" \
                else inner.shifted_right(expr.amount.value)
        return None

    # ------------------------------------------------------------ expressions

    def _access_lines(self, acc: ast.SignalAccess, scope: _Scope) -> list[int]:
        width = scope.symbols[acc.signal].width
        lines = scope.lines[acc.signal]
        return [lines[i] for i in acc.bit_indices(width)]

    def _leaf_usage(self, expr: ast.Expression, scope: _Scope) -> Counter:
        counter: Counter = Counter()
        self._count_leaves(expr, scope, counter)
        return counter

    def _count_leaves(self, expr: ast.Expression, scope: _Scope, counter: Counter) -> None:
        if isinstance(expr, ast.SignalRef):
            counter.update(self._access_lines(expr.access, scope))
        elif isinstance(expr, ast.Binary):
            self._count_leaves(expr.left, scope, counter)
            self._count_leaves(expr.right, scope, counter)
        elif isinstance(expr, ast.Shift):
            self._count_leaves(expr.operand, scope, counter)

    def _expr_width(self, expr: ast.Expression, scope: _Scope, hint: int) -> int:
        return expr_width(expr, scope.symbols) or hint

    def eval_expr(self, expr: ast.Expression, scope: _Scope, undo: list,
                  usage: Counter, hint: int, ctx: frozenset = frozenset()) -> Operand:
        """Materialize `expr` as an operand, emitting whatever gates the mode
        requires. Mutating steps push their inverses onto `undo` (LIFO); `ctx`
        is never applied to these gates, it only guards in-place mutation away
        from active condition lines."""
        if isinstance(expr, ast.Constant):
            return Operand.constant(expr.value % (1 << hint), hint)
        if isinstance(expr, ast.SignalRef):
            return Operand.lines(self._access_lines(expr.access, scope))
        if isinstance(expr, ast.Shift):
            width = self._expr_width(expr.operand, scope, hint)
            inner = self.eval_expr(expr.operand, scope, undo, usage, width, ctx)
            amount = expr.amount.value  # elaboration guarantees a constant
            return inner.shifted_left(amount) if expr.op == "<<" else inner.shifted_right(amount)
        if isinstance(expr, ast.Binary):
            if expr.op in ("+", "-", "^"):
                return self._eval_arith(expr, scope, undo, usage, hint, ctx)
            return self._eval_boolean(expr, scope, undo, usage, hint, ctx)
        raise SynthesisError(f"expression must be elaborated before synthesis: {expr!r}")

    def _eval_arith(self, expr: ast.Binary, scope: _Scope, undo: list,
                    usage: Counter, hint: int, ctx: frozenset) -> Operand:
        width = self._expr_width(expr, scope, hint)
        left = self.eval_expr(expr.left, scope, undo, usage, width, ctx)
        right = self.eval_expr(expr.right, scope, undo, usage, width, ctx)
        op = expr.op

        if self.mode is SynthesisMode.COST_AWARE:
            result = self.alloc.fresh(width)
            self.dirty.update(result)
            build_xor_assign(self.circuit, frozenset(), result, left)
            self._apply_arith(op, result, right)
            return Operand.lines(result)

        # line-aware: prefer mutating an operand in place
        if op in ("+", "^") and not self._mutable(left, right, usage, ctx) \
                and self._mutable(right, left, usage, ctx):
            left, right = right, left
        if self._mutable(left, right, usage, ctx):
            target = list(left.bits)
            self._apply_arith(op, target, right)
            inverse = {"+": "-", "-": "+", "^": "^"}[op]
            undo.append(lambda: self._apply_arith(inverse, target, right))
            return left

        helpers = self.alloc.acquire(width)
        build_xor_assign(self.circuit, frozenset(), helpers, left)
        self._apply_arith(op, helpers, right)
        inverse = {"+": "-", "-": "+", "^": "^"}[op]

        def uncompute() -> None:
            self._apply_arith(inverse, helpers, right)
            build_xor_assign(self.circuit, frozenset(), helpers, left)
            self.alloc.release(helpers)

        undo.append(uncompute)
        return Operand.lines(helpers)

    def _apply_arith(self, op: str, target: list[int], source: Operand) -> None:
        if op == "+":
            build_add_assign(self.circuit, frozenset(), target, source)
        elif op == "-":
            build_sub_assign(self.circuit, frozenset(), target, source)
        else:
            build_xor_assign(self.circuit, frozenset(), target, source)

    def _mutable(self, candidate: Operand, other: Operand, usage: Counter, ctx: frozenset) -> bool:
        """In-place mutation is safe only on lines read exactly once in the
        whole right-hand side, absent from the other operand, and not serving
        as an active condition line."""
        if not candidate.is_all_lines:
            return False
        if any(usage[line] > 1 for line in candidate.bits):
            return False
        if candidate.line_set() & set(ctx):
            return False
        return not (candidate.line_set() & other.line_set())

    def _eval_boolean(self, expr: ast.Binary, scope: _Scope, undo: list,
                      usage: Counter, hint: int, ctx: frozenset) -> Operand:
        operand_width = (expr_width(expr.left, scope.symbols)
                         or expr_width(expr.right, scope.symbols)
                         or hint)
        if expr.op in ast.LOGIC_OPS:
            operand_width = 1
        result_width = operand_width if expr.op in ("&", "|") else 1
        left = self.eval_expr(expr.left, scope, undo, usage, operand_width, ctx)
        right = self.eval_expr(expr.right, scope, undo, usage, operand_width, ctx)

        if self.mode is SynthesisMode.COST_AWARE:
            result = self.alloc.fresh(result_width)
            self.dirty.update(result)
            build_binary_onto(self.circuit, frozenset(), expr.op, left, right, result, self.alloc)
            return Operand.lines(result)

        helpers = self.alloc.acquire(result_width)
        build_binary_onto(self.circuit, frozenset(), expr.op, left, right, helpers, self.alloc)

        def uncompute() -> None:
            # the block XORs the same value again, returning the helpers to 0
            build_binary_onto(self.circuit, frozenset(), expr.op, left, right, helpers, self.alloc)
            self.alloc.release(helpers)

        undo.append(uncompute)
        return Operand.lines(helpers)


def synthesize(program: ElaboratedProgram, mode: SynthesisMode,
               settings: SynthesisSettings | None = None) -> SynthesisResult:
    """Lower an elaborated program to a circuit with its signal binding."""
    return _Synthesizer(program, mode, settings or SynthesisSettings()).run()


# ----------------------------------------------------------- word conversions

def embed_inputs(binding: SignalBinding, inputs: SignalState, line_count: int) -> int:
    """Bit word with every input signal placed at its bound lines; all other
    lines (outputs, wires, constants) are zero."""
    word = 0
    for name, bound in binding.signals.items():
        if not bound.is_input:
            continue
        if name not in inputs:
            raise ValueError(f"unassigned input {name}")
        value = inputs[name]
        if not 0 <= value < (1 << bound.width):
            raise ValueError(f"value {value} does not fit signal '{name}({bound.width})'")
        for k, line in enumerate(bound.lines):
            if line >= line_count:
                raise ValueError(f"line {line} out of range")
            if (value >> k) & 1:
                word |= 1 << line
    return word


def extract_signal(binding: SignalBinding, word: int, name: str) -> int:
    value = 0
    for k, line in enumerate(binding.signals[name].lines):
        if (word >> line) & 1:
            value |= 1 << k
    return value


def extract_outputs(binding: SignalBinding, word: int) -> SignalState:
    """Values of the declared output signals; the inverse of embed_inputs on
    non-garbage lines."""
    return {name: extract_signal(binding, word, name)
            for name, bound in binding.signals.items() if bound.is_output}
