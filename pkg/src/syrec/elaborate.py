"""Elaboration: loop unrolling, constant folding, loop-variable substitution.

After elaboration a program contains only Skip/Swap/Unary/Assign/IfElse/
Call/Uncall statements, every `$var` and `#signal` is a constant, constant
subexpressions are folded modulo the context width, and width-1 equality
tests against 1 (`e = 1`, `e != 0`) are reduced to the tested expression
itself. Elaboration is deterministic and idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import ast
from .analyzer import CheckedProgram, ModuleSymbols, expr_width
from .diagnostics import ElaborationError, error


@dataclass(frozen=True)
class ElabSettings:
    max_unroll: int = 4096   # total loop iterations across the whole program


@dataclass(frozen=True)
class ElaboratedProgram:
    program: ast.Program
    symbols: dict[str, ModuleSymbols]

    @property
    def entry(self) -> ast.ModuleDecl:
        return self.program.entry

    def entry_symbols(self) -> ModuleSymbols:
        return self.symbols[self.entry.name]


def _mask(value: int, width: int) -> int:
    return value % (1 << width)


class _Elaborator:
    def __init__(self, symbols: dict[str, ModuleSymbols], settings: ElabSettings):
        self.symbols = symbols
        self.settings = settings
        self.iterations = 0

    def module(self, mod: ast.ModuleDecl) -> ast.ModuleDecl:
        table = self.symbols[mod.name]
        body = self.stmt_list(mod.body, table, {})
        return replace(mod, body=body)

    def stmt_list(self, stmts: tuple[ast.Statement, ...], table: ModuleSymbols,
                  env: dict[str, int]) -> tuple[ast.Statement, ...]:
        out: list[ast.Statement] = []
        for stmt in stmts:
            out.extend(self.stmt(stmt, table, env))
        return tuple(out)

    def stmt(self, stmt: ast.Statement, table: ModuleSymbols, env: dict[str, int]) -> list[ast.Statement]:
        if isinstance(stmt, (ast.Skip, ast.Swap, ast.Call, ast.Uncall)):
            return [stmt]
        if isinstance(stmt, ast.Unary):
            return [stmt]
        if isinstance(stmt, ast.Assign):
            width = stmt.lhs.width(table[stmt.lhs.signal].width)
            return [replace(stmt, rhs=self.expr(stmt.rhs, table, env, width))]
        if isinstance(stmt, ast.IfElse):
            cond = self.expr(stmt.cond, table, env, 1)
            fi_cond = self.expr(stmt.fi_cond, table, env, 1)
            return [ast.IfElse(
                cond,
                self.stmt_list(stmt.then_body, table, env),
                self.stmt_list(stmt.else_body, table, env),
                fi_cond,
                stmt.loc,
            )]
        if isinstance(stmt, ast.ForLoop):
            return self.unroll(stmt, table, env)
        raise TypeError(f"unknown statement node {stmt!r}")

    def unroll(self, loop: ast.ForLoop, table: ModuleSymbols, env: dict[str, int]) -> list[ast.Statement]:
        start = self.number(loop.start, table, env)
        stop = self.number(loop.stop, table, env)
        if loop.step is None:
            step = 1 if start <= stop else -1
        else:
            step = self.number(loop.step, table, env)
        if step == 0:
            raise ElaborationError([error(f"loop over '${loop.var}' has step 0", loop.loc.line, loop.loc.col)])
        out: list[ast.Statement] = []
        value = start
        while (step > 0 and value <= stop) or (step < 0 and value >= stop):
            self.iterations += 1
            if self.iterations > self.settings.max_unroll:
                raise ElaborationError([error(
                    f"loop unrolling exceeds the limit of {self.settings.max_unroll} iterations",
                    loop.loc.line, loop.loc.col)])
            inner = dict(env)
            inner[loop.var] = value
            out.extend(self.stmt_list(loop.body, table, inner))
            value += step
        return out

    # ------------------------------------------------------------ expressions

    def number(self, num: ast.Number, table: ModuleSymbols, env: dict[str, int]) -> int:
        if isinstance(num, ast.Constant):
            return num.value
        if isinstance(num, ast.LoopVar):
            if num.name not in env:
                raise ElaborationError([error(f"loop variable '${num.name}' has no value here",
                                              num.loc.line, num.loc.col)])
            return env[num.name]
        if isinstance(num, ast.WidthOf):
            return table[num.signal].width
        raise TypeError(f"not a compile-time number: {num!r}")

    def expr(self, expr: ast.Expression, table: ModuleSymbols, env: dict[str, int],
             width: int) -> ast.Expression:
        """Fold `expr` under a known context width (arithmetic wraps mod 2^width)."""
        if isinstance(expr, ast.Constant):
            return replace(expr, value=_mask(expr.value, width))
        if isinstance(expr, (ast.LoopVar, ast.WidthOf)):
            return ast.Constant(_mask(self.number(expr, table, env), width), expr.loc)
        if isinstance(expr, ast.SignalRef):
            return expr
        if isinstance(expr, ast.Shift):
            amount = self.number(expr.amount, table, env)
            if amount < 0:
                raise ElaborationError([error(f"negative shift amount {amount}", expr.loc.line, expr.loc.col)])
            operand = self.expr(expr.operand, table, env, width)
            if isinstance(operand, ast.Constant):
                value = operand.value << amount if expr.op == "<<" else operand.value >> amount
                return ast.Constant(_mask(value, width), expr.loc)
            return ast.Shift(expr.op, operand, ast.Constant(amount, expr.loc), expr.loc)
        if isinstance(expr, ast.Binary):
            operand_width = width
            if expr.op in ast.COMPARISON_OPS:
                operand_width = expr_width(expr.left, table) or expr_width(expr.right, table) or width
            elif expr.op in ast.LOGIC_OPS:
                operand_width = 1
            left = self.expr(expr.left, table, env, operand_width)
            right = self.expr(expr.right, table, env, operand_width)
            if isinstance(left, ast.Constant) and isinstance(right, ast.Constant):
                value = _eval_binary(expr.op, left.value, right.value, operand_width)
                return ast.Constant(_mask(value, width), expr.loc)
            folded = ast.Binary(expr.op, left, right, expr.loc)
            return _simplify_bit_test(folded, table)
        raise TypeError(f"unknown expression node {expr!r}")


def _eval_binary(op: str, a: int, b: int, width: int) -> int:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "^":
        return a ^ b
    if op == "&":
        return a & b
    if op == "|":
        return a | b
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
    raise ValueError(f"unknown binary operator '{op}'")


def _simplify_bit_test(expr: ast.Binary, table: ModuleSymbols) -> ast.Expression:
    """`e = 1` and `e != 0` are the identity on a width-1 expression."""
    if expr.op not in ("=", "!="):
        return expr
    wanted = 1 if expr.op == "=" else 0
    for tested, const in ((expr.left, expr.right), (expr.right, expr.left)):
        if isinstance(const, ast.Constant) and const.value == wanted and expr_width(tested, table) == 1:
            return tested
    return expr


def elaborate(checked: CheckedProgram | ElaboratedProgram,
              settings: ElabSettings | None = None) -> ElaboratedProgram:
    """Unroll and fold a checked program; deterministic and idempotent."""
    settings = settings or ElabSettings()
    worker = _Elaborator(checked.symbols, settings)
    modules = tuple(worker.module(mod) for mod in checked.program.modules)
    return ElaboratedProgram(ast.Program(modules), checked.symbols)
