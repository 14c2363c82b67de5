"""Static semantics for parsed SyReC programs.

Resolves identifiers, infers and checks widths, and enforces the
reversibility restrictions: assignment targets never read on the right-hand
side, swaps over disjoint equal-width ranges, writable targets only, width-1
conditions with structurally identical if/fi expressions, and alias-free call
arguments. All violations are reported together; nothing stops at the first
error.

Analysis returns a CheckedProgram whose AST has every omitted width
materialized (default 32, overridable), so later stages see concrete widths
everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import ast
from .diagnostics import AnalysisError, Diagnostic, DiagnosticSink


DEFAULT_SIGNAL_WIDTH = 32


@dataclass(frozen=True)
class SignalInfo:
    kind: str    # in | out | inout | wire | state
    width: int

    @property
    def writable(self) -> bool:
        return self.kind != ast.IN

    @property
    def is_input(self) -> bool:
        return self.kind in (ast.IN, ast.INOUT, ast.STATE)

    @property
    def is_output(self) -> bool:
        return self.kind in (ast.OUT, ast.INOUT, ast.STATE)


ModuleSymbols = dict[str, SignalInfo]


@dataclass(frozen=True)
class CheckedProgram:
    program: ast.Program
    symbols: dict[str, ModuleSymbols]
    warnings: tuple[Diagnostic, ...] = ()

    @property
    def entry(self) -> ast.ModuleDecl:
        return self.program.entry

    def entry_symbols(self) -> ModuleSymbols:
        return self.symbols[self.entry.name]


@dataclass
class _ModuleCtx:
    symbols: ModuleSymbols
    loop_vars: list[str] = field(default_factory=list)


class _Analyzer:
    def __init__(self, program: ast.Program, default_width: int):
        self.program = program
        self.default_width = default_width
        self.sink = DiagnosticSink()
        self.declared: dict[str, ast.ModuleDecl] = {}

    # ----------------------------------------------------------- declarations

    def run(self) -> CheckedProgram:
        modules = []
        symbols: dict[str, ModuleSymbols] = {}
        for mod in self.program.modules:
            if mod.name in self.declared:
                self.sink.error(f"duplicate module name '{mod.name}'", mod.loc.line, mod.loc.col)
            mod = self._materialize_widths(mod)
            table = self._build_symbols(mod)
            ctx = _ModuleCtx(table)
            for stmt in mod.body:
                self._check_stmt(stmt, ctx)
            self.declared[mod.name] = mod
            modules.append(mod)
            symbols[mod.name] = table
        if self.sink.has_errors:
            raise AnalysisError(self.sink.items)
        checked = ast.Program(tuple(modules))
        warnings = tuple(d for d in self.sink.items if d.severity == "warning")
        return CheckedProgram(checked, symbols, warnings)

    def _materialize_widths(self, mod: ast.ModuleDecl) -> ast.ModuleDecl:
        params = tuple(replace(p, width=p.width or self.default_width) for p in mod.params)
        locals_ = tuple(replace(l, width=l.width or self.default_width) for l in mod.locals)
        return replace(mod, params=params, locals=locals_)

    def _build_symbols(self, mod: ast.ModuleDecl) -> ModuleSymbols:
        table: ModuleSymbols = {}
        for p in mod.params:
            if p.name in table:
                self.sink.error(f"duplicate signal name '{p.name}' in module '{mod.name}'", p.loc.line, p.loc.col)
                continue
            if p.width < 1:
                self.sink.error(f"signal '{p.name}' must have width >= 1", p.loc.line, p.loc.col)
            table[p.name] = SignalInfo(p.direction, max(p.width, 1))
        for l in mod.locals:
            if l.name in table:
                self.sink.error(f"duplicate signal name '{l.name}' in module '{mod.name}'", l.loc.line, l.loc.col)
                continue
            if l.width < 1:
                self.sink.error(f"signal '{l.name}' must have width >= 1", l.loc.line, l.loc.col)
            table[l.name] = SignalInfo(l.kind, max(l.width, 1))
        return table

    # ------------------------------------------------------------- statements

    def _check_stmt(self, stmt: ast.Statement, ctx: _ModuleCtx) -> None:
        if isinstance(stmt, ast.Skip):
            return
        if isinstance(stmt, ast.Unary):
            self._check_access(stmt.target, ctx, writable=True)
            return
        if isinstance(stmt, ast.Swap):
            wl = self._check_access(stmt.lhs, ctx, writable=True)
            wr = self._check_access(stmt.rhs, ctx, writable=True)
            if wl and wr and wl != wr:
                self.sink.error(f"swap width mismatch {wl} vs {wr}", stmt.loc.line, stmt.loc.col)
            lbits = self._access_bits(stmt.lhs, ctx)
            if lbits & self._access_bits(stmt.rhs, ctx):
                self.sink.error("swap sides overlap", stmt.loc.line, stmt.loc.col)
            return
        if isinstance(stmt, ast.Assign):
            wl = self._check_access(stmt.lhs, ctx, writable=True)
            wr = self._check_expr(stmt.rhs, ctx, expected=wl)
            if wl and wr and wl != wr:
                self.sink.error(f"assignment width mismatch: target has {wl} bits, expression has {wr}",
                                stmt.loc.line, stmt.loc.col)
            written = self._access_bits(stmt.lhs, ctx)
            if written & self._expr_read_bits(stmt.rhs, ctx):
                self.sink.error("assignment target read on right-hand side", stmt.loc.line, stmt.loc.col)
            return
        if isinstance(stmt, ast.IfElse):
            wc = self._check_expr(stmt.cond, ctx, expected=1)
            if wc not in (None, 1):
                self.sink.error(f"condition must have width 1, found {wc}", stmt.loc.line, stmt.loc.col)
            if stmt.cond != stmt.fi_cond:
                self.sink.error("fi-expression must be identical to the if-expression", stmt.loc.line, stmt.loc.col)
            for s in stmt.then_body:
                self._check_stmt(s, ctx)
            for s in stmt.else_body:
                self._check_stmt(s, ctx)
            return
        if isinstance(stmt, ast.ForLoop):
            if stmt.var in ctx.loop_vars:
                self.sink.error(f"loop variable '${stmt.var}' shadows an enclosing loop variable",
                                stmt.loc.line, stmt.loc.col)
            for bound in (stmt.start, stmt.stop, stmt.step):
                if bound is not None:
                    self._check_number(bound, ctx)
            ctx.loop_vars.append(stmt.var)
            for s in stmt.body:
                self._check_stmt(s, ctx)
            ctx.loop_vars.pop()
            return
        if isinstance(stmt, (ast.Call, ast.Uncall)):
            self._check_call(stmt, ctx)
            return
        raise TypeError(f"unknown statement node {stmt!r}")

    def _check_call(self, stmt: ast.Call | ast.Uncall, ctx: _ModuleCtx) -> None:
        kind = "call" if isinstance(stmt, ast.Call) else "uncall"
        target = self.declared.get(stmt.module)
        if target is None:
            self.sink.error(f"{kind} target '{stmt.module}' is not a previously declared module",
                            stmt.loc.line, stmt.loc.col)
            return
        if len(stmt.args) != len(target.params):
            self.sink.error(
                f"{kind} to '{stmt.module}' passes {len(stmt.args)} arguments, expected {len(target.params)}",
                stmt.loc.line, stmt.loc.col)
            return
        seen: set[str] = set()
        for arg, formal in zip(stmt.args, target.params):
            if arg in seen:
                self.sink.error(f"signal '{arg}' passed twice to '{stmt.module}' (aliasing is not allowed)",
                                stmt.loc.line, stmt.loc.col)
            seen.add(arg)
            info = ctx.symbols.get(arg)
            if info is None:
                self.sink.error(f"unknown signal '{arg}'", stmt.loc.line, stmt.loc.col)
                continue
            if info.width != formal.width:
                self.sink.error(
                    f"argument '{arg}' has width {info.width}, parameter '{formal.name}' expects {formal.width}",
                    stmt.loc.line, stmt.loc.col)
            if formal.direction != ast.IN and not info.writable:
                self.sink.error(
                    f"input signal '{arg}' cannot be bound to writable parameter '{formal.name}'",
                    stmt.loc.line, stmt.loc.col)

    # ------------------------------------------------------------ expressions

    def _check_access(self, acc: ast.SignalAccess, ctx: _ModuleCtx, writable: bool = False) -> int | None:
        info = ctx.symbols.get(acc.signal)
        if info is None:
            self.sink.error(f"unknown signal '{acc.signal}'", acc.loc.line, acc.loc.col)
            return None
        if writable and not info.writable:
            self.sink.error(f"signal '{acc.signal}' is an input and cannot be modified", acc.loc.line, acc.loc.col)
        for idx in (acc.start, acc.end):
            if idx is not None and not 0 <= idx < info.width:
                self.sink.error(f"bit index {idx} out of range for '{acc.signal}({info.width})'",
                                acc.loc.line, acc.loc.col)
                return None
        return acc.width(info.width)

    def _access_bits(self, acc: ast.SignalAccess, ctx: _ModuleCtx) -> set[tuple[str, int]]:
        info = ctx.symbols.get(acc.signal)
        if info is None:
            return set()
        indices = acc.bit_indices(info.width)
        if any(not 0 <= i < info.width for i in indices):
            return set()
        return {(acc.signal, i) for i in indices}

    def _expr_read_bits(self, expr: ast.Expression, ctx: _ModuleCtx) -> set[tuple[str, int]]:
        if isinstance(expr, ast.SignalRef):
            return self._access_bits(expr.access, ctx)
        if isinstance(expr, ast.Binary):
            return self._expr_read_bits(expr.left, ctx) | self._expr_read_bits(expr.right, ctx)
        if isinstance(expr, ast.Shift):
            return self._expr_read_bits(expr.operand, ctx)
        return set()

    def _check_number(self, num: ast.Number, ctx: _ModuleCtx) -> None:
        if isinstance(num, ast.Constant):
            return
        if isinstance(num, ast.LoopVar):
            if num.name not in ctx.loop_vars:
                self.sink.error(f"loop variable '${num.name}' is not in scope", num.loc.line, num.loc.col)
            return
        if isinstance(num, ast.WidthOf):
            if num.signal not in ctx.symbols:
                self.sink.error(f"unknown signal '{num.signal}' in width reference", num.loc.line, num.loc.col)
            return
        self.sink.error("expected a compile-time number", num.loc.line, num.loc.col)

    def _check_expr(self, expr: ast.Expression, ctx: _ModuleCtx, expected: int | None = None) -> int | None:
        """Returns the expression width, or None when it adapts to context."""
        if isinstance(expr, ast.Constant):
            if expected and expr.value >= 0 and expr.value >= 1 << expected:
                self.sink.warning(f"constant {expr.value} does not fit in {expected} bit(s); it is truncated",
                                  expr.loc.line, expr.loc.col)
            return None
        if isinstance(expr, ast.LoopVar):
            self._check_number(expr, ctx)
            return None
        if isinstance(expr, ast.WidthOf):
            self._check_number(expr, ctx)
            return None
        if isinstance(expr, ast.SignalRef):
            return self._check_access(expr.access, ctx)
        if isinstance(expr, ast.Shift):
            self._check_number(expr.amount, ctx)
            return self._check_expr(expr.operand, ctx, expected)
        if isinstance(expr, ast.Binary):
            if expr.op in ast.COMPARISON_OPS:
                wl = self._check_expr(expr.left, ctx)
                wr = self._check_expr(expr.right, ctx, expected=wl)
                if wl is None and wr is not None:
                    self._check_expr(expr.left, ctx, expected=wr)
                if wl and wr and wl != wr:
                    self.sink.error(f"comparison operands differ in width: {wl} vs {wr}",
                                    expr.loc.line, expr.loc.col)
                return 1
            if expr.op in ast.LOGIC_OPS:
                for side in (expr.left, expr.right):
                    w = self._check_expr(side, ctx, expected=1)
                    if w not in (None, 1):
                        self.sink.error(f"'{expr.op}' operand must have width 1, found {w}",
                                        expr.loc.line, expr.loc.col)
                return 1
            # arithmetic / bitwise: equal widths, result keeps the width
            wl = self._check_expr(expr.left, ctx, expected=expected)
            wr = self._check_expr(expr.right, ctx, expected=wl or expected)
            if wl is None and wr is not None:
                self._check_expr(expr.left, ctx, expected=wr)
            if wl and wr and wl != wr:
                self.sink.error(f"operand widths differ for '{expr.op}': {wl} vs {wr}",
                                expr.loc.line, expr.loc.col)
            return wl or wr
        raise TypeError(f"unknown expression node {expr!r}")


def expr_width(expr: ast.Expression, symbols: ModuleSymbols) -> int | None:
    """Width of a checked expression; None when it adapts to its context."""
    if isinstance(expr, (ast.Constant, ast.LoopVar, ast.WidthOf)):
        return None
    if isinstance(expr, ast.SignalRef):
        return expr.access.width(symbols[expr.access.signal].width)
    if isinstance(expr, ast.Shift):
        return expr_width(expr.operand, symbols)
    if isinstance(expr, ast.Binary):
        if expr.op in ast.COMPARISON_OPS or expr.op in ast.LOGIC_OPS:
            return 1
        return expr_width(expr.left, symbols) or expr_width(expr.right, symbols)
    raise TypeError(f"unknown expression node {expr!r}")


def analyze(program: ast.Program, default_width: int = DEFAULT_SIGNAL_WIDTH) -> CheckedProgram:
    """Check a parsed program; raises AnalysisError with every violation found."""
    return _Analyzer(program, default_width).run()


def try_analyze(program: ast.Program,
                default_width: int = DEFAULT_SIGNAL_WIDTH) -> tuple[CheckedProgram | None, list[Diagnostic]]:
    try:
        checked = analyze(program, default_width)
        return checked, list(checked.warnings)
    except AnalysisError as exc:
        return None, exc.diagnostics
