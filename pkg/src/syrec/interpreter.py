"""Reference evaluator for elaborated SyReC programs.

This is the ground-truth oracle the synthesizers and the circuit simulator
are checked against: a direct big-step evaluator over bit-vector signal
states, favoring obvious correctness over speed. A fi-expression that
evaluates differently from its if-expression is a hard error, making
non-reversible control flow observable.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ast
from .diagnostics import FiConditionError, InterpreterError
from .elaborate import ElaboratedProgram


SignalState = dict[str, int]


@dataclass
class InterpResult:
    final_state: SignalState
    trace: list[str] | None = None


def _mask(value: int, width: int) -> int:
    return value % (1 << width)


class _Frame:
    """Maps signal names to store slots; call arguments alias caller slots."""

    def __init__(self) -> None:
        self.slots: dict[str, int] = {}     # name -> store index
        self.widths: dict[str, int] = {}


class _Machine:
    def __init__(self, program: ElaboratedProgram, trace: bool):
        self.program = program
        self.store: list[int] = []
        self.trace: list[str] | None = [] if trace else None

    def alloc(self, frame: _Frame, name: str, width: int, value: int = 0) -> None:
        frame.slots[name] = len(self.store)
        frame.widths[name] = width
        self.store.append(_mask(value, width))

    # ------------------------------------------------------------- accesses

    def read_access(self, acc: ast.SignalAccess, frame: _Frame) -> tuple[int, int]:
        value = self.store[frame.slots[acc.signal]]
        bits = acc.bit_indices(frame.widths[acc.signal])
        lo, width = bits[0], len(bits)
        return (value >> lo) & ((1 << width) - 1), width

    def write_access(self, acc: ast.SignalAccess, frame: _Frame, new: int) -> None:
        slot = frame.slots[acc.signal]
        bits = acc.bit_indices(frame.widths[acc.signal])
        lo, width = bits[0], len(bits)
        window = ((1 << width) - 1) << lo
        self.store[slot] = (self.store[slot] & ~window) | ((new & ((1 << width) - 1)) << lo)

    # ----------------------------------------------------------- expressions

    def eval(self, expr: ast.Expression, frame: _Frame) -> tuple[int, int | None]:
        """Returns (value, width); width None for context-adapting constants."""
        if isinstance(expr, ast.Constant):
            return expr.value, None
        if isinstance(expr, ast.SignalRef):
            return self.read_access(expr.access, frame)
        if isinstance(expr, ast.Shift):
            value, width = self.eval(expr.operand, frame)
            if not isinstance(expr.amount, ast.Constant):
                raise InterpreterError("shift amount must be elaborated to a constant")
            amount = expr.amount.value
            if expr.op == "<<":
                return (_mask(value << amount, width) if width else value << amount), width
            return value >> amount, width
        if isinstance(expr, ast.Binary):
            lv, lw = self.eval(expr.left, frame)
            rv, rw = self.eval(expr.right, frame)
            width = lw or rw
            if expr.op in ast.COMPARISON_OPS or expr.op in ast.LOGIC_OPS:
                if width:
                    lv, rv = _mask(lv, width), _mask(rv, width)
                return self._compare(expr.op, lv, rv), 1
            if width is None:
                raise InterpreterError("constant expression must be folded before interpretation")
            if expr.op == "+":
                return _mask(lv + rv, width), width
            if expr.op == "-":
                return _mask(lv - rv, width), width
            if expr.op == "^":
                return _mask(lv ^ rv, width), width
            if expr.op == "&":
                return _mask(lv & rv, width), width
            if expr.op == "|":
                return _mask(lv | rv, width), width
            raise InterpreterError(f"unknown operator '{expr.op}'")
        if isinstance(expr, (ast.LoopVar, ast.WidthOf)):
            raise InterpreterError("loop variables must be elaborated before interpretation")
        raise TypeError(f"unknown expression node {expr!r}")

    @staticmethod
    def _compare(op: str, a: int, b: int) -> int:
        if op == "<":
            return int(a < b)
        if op == ">":
            return int(a > b)
        if op == "=":
            return int(a == b)
        if op == "!=":
            return int(a != b)
        if op == "<=":
            return int(a <= b)
        if op == ">=":
            return int(a >= b)
        if op == "&&":
            return int(bool(a) and bool(b))
        if op == "||":
            return int(bool(a) or bool(b))
        raise InterpreterError(f"unknown comparison '{op}'")

    # ------------------------------------------------------------ statements

    def run_body(self, body: tuple[ast.Statement, ...], frame: _Frame) -> None:
        for stmt in body:
            self.run_stmt(stmt, frame)

    def run_stmt(self, stmt: ast.Statement, frame: _Frame) -> None:
        if isinstance(stmt, ast.Skip):
            self._record(stmt)
            return
        if isinstance(stmt, ast.Swap):
            lv, lw = self.read_access(stmt.lhs, frame)
            rv, rw = self.read_access(stmt.rhs, frame)
            if lw != rw:
                raise InterpreterError(f"swap width mismatch {lw} vs {rw}")
            self.write_access(stmt.lhs, frame, rv)
            self.write_access(stmt.rhs, frame, lv)
            self._record(stmt)
            return
        if isinstance(stmt, ast.Unary):
            value, width = self.read_access(stmt.target, frame)
            if stmt.op == "invert":
                value ^= (1 << width) - 1
            elif stmt.op == "increment":
                value = _mask(value + 1, width)
            else:
                value = _mask(value - 1, width)
            self.write_access(stmt.target, frame, value)
            self._record(stmt)
            return
        if isinstance(stmt, ast.Assign):
            rhs, _ = self.eval(stmt.rhs, frame)
            current, width = self.read_access(stmt.lhs, frame)
            rhs = _mask(rhs, width)
            if stmt.op == "xor":
                current ^= rhs
            elif stmt.op == "add":
                current = _mask(current + rhs, width)
            else:
                current = _mask(current - rhs, width)
            self.write_access(stmt.lhs, frame, current)
            self._record(stmt)
            return
        if isinstance(stmt, ast.IfElse):
            before, _ = self.eval(stmt.cond, frame)
            self.run_body(stmt.then_body if before else stmt.else_body, frame)
            after, _ = self.eval(stmt.fi_cond, frame)
            if after != before:
                raise FiConditionError(
                    f"fi-expression at {stmt.loc.line}:{stmt.loc.col} evaluated to {after}, "
                    f"but the if-expression evaluated to {before}: the program is not reversible")
            return
        if isinstance(stmt, ast.Call):
            self._run_call(stmt.module, stmt.args, frame, inverted=False)
            return
        if isinstance(stmt, ast.Uncall):
            self._run_call(stmt.module, stmt.args, frame, inverted=True)
            return
        if isinstance(stmt, ast.ForLoop):
            raise InterpreterError("loops must be elaborated before interpretation")
        raise TypeError(f"unknown statement node {stmt!r}")

    def _run_call(self, name: str, args: tuple[str, ...], frame: _Frame, inverted: bool) -> None:
        callee = self.program.program.module(name)
        if callee is None:
            raise InterpreterError(f"call target '{name}' not found")
        inner = _Frame()
        for formal, actual in zip(callee.params, args):
            inner.slots[formal.name] = frame.slots[actual]
            inner.widths[formal.name] = frame.widths[actual]
        for local in callee.locals:
            self.alloc(inner, local.name, local.width)
        body = invert_statements(callee.body) if inverted else callee.body
        self.run_body(body, inner)

    def _record(self, stmt: ast.Statement) -> None:
        if self.trace is not None:
            self.trace.append(ast.stmt_to_source(stmt))


def interpret(program: ElaboratedProgram, inputs: SignalState, trace: bool = False) -> InterpResult:
    """Execute the entry module on `inputs`; returns the final signal state.

    `inputs` must assign every in/inout/state signal of the entry module and
    nothing else; out and wire signals start at zero.
    """
    entry = program.entry
    symbols = program.entry_symbols()
    machine = _Machine(program, trace)
    frame = _Frame()

    expected = {name for name, info in symbols.items() if info.is_input}
    unknown = set(inputs) - set(symbols)
    if unknown:
        raise InterpreterError(f"unknown input signal '{sorted(unknown)[0]}'")
    not_inputs = set(inputs) - expected
    if not_inputs:
        raise InterpreterError(f"signal '{sorted(not_inputs)[0]}' is not an input")
    missing = expected - set(inputs)
    if missing:
        raise InterpreterError(f"unassigned input {sorted(missing)[0]}")

    for name, info in symbols.items():
        value = inputs.get(name, 0)
        if not 0 <= value < (1 << info.width):
            raise InterpreterError(f"value {value} does not fit signal '{name}({info.width})'")
        machine.alloc(frame, name, info.width, value if info.is_input else 0)

    machine.run_body(entry.body, frame)
    final = {name: machine.store[frame.slots[name]] for name in symbols}
    return InterpResult(final, machine.trace)


def invert_statements(body: tuple[ast.Statement, ...]) -> tuple[ast.Statement, ...]:
    """Inverse of an elaborated statement list: reversed order, each statement
    replaced by its inverse. Running body then the result restores any state."""
    return tuple(_invert(stmt) for stmt in reversed(body))


_INVERSE_UNARY = {"invert": "invert", "increment": "decrement", "decrement": "increment"}
_INVERSE_ASSIGN = {"xor": "xor", "add": "sub", "sub": "add"}


def _invert(stmt: ast.Statement) -> ast.Statement:
    if isinstance(stmt, (ast.Skip, ast.Swap)):
        return stmt
    if isinstance(stmt, ast.Unary):
        return ast.Unary(_INVERSE_UNARY[stmt.op], stmt.target, stmt.loc)
    if isinstance(stmt, ast.Assign):
        return ast.Assign(_INVERSE_ASSIGN[stmt.op], stmt.lhs, stmt.rhs, stmt.loc)
    if isinstance(stmt, ast.IfElse):
        return ast.IfElse(stmt.cond, invert_statements(stmt.then_body),
                          invert_statements(stmt.else_body), stmt.fi_cond, stmt.loc)
    if isinstance(stmt, ast.Call):
        return ast.Uncall(stmt.module, stmt.args, stmt.loc)
    if isinstance(stmt, ast.Uncall):
        return ast.Call(stmt.module, stmt.args, stmt.loc)
    if isinstance(stmt, ast.ForLoop):
        raise InterpreterError("loops must be elaborated before inversion")
    raise TypeError(f"unknown statement node {stmt!r}")
