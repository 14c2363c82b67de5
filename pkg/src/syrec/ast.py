"""Abstract syntax for SyReC programs.

Nodes are immutable; statement bodies and argument lists are tuples so whole
programs can be shared freely between threads and compared structurally.
Source locations never participate in equality: a pretty-printed program
re-parses to an AST equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Loc:
    line: int = 0
    col: int = 0


_NOLOC = Loc()


def _locfield() -> Loc:
    return field(default=_NOLOC, compare=False, repr=False)  # type: ignore[return-value]


# ---------------------------------------------------------------- expressions

@dataclass(frozen=True)
class Constant:
    value: int
    loc: Loc = _locfield()


@dataclass(frozen=True)
class SignalAccess:
    """Whole signal, single bit `.i`, or bit range `.i:j`.

    A range covers bits min(i,j)..max(i,j); the lowest index is always the
    least significant bit of the selected value.
    """

    signal: str
    start: int | None = None   # None = whole signal
    end: int | None = None     # None with start set = single bit
    loc: Loc = _locfield()

    def bit_indices(self, signal_width: int) -> list[int]:
        """Selected bit positions, LSB first."""
        if self.start is None:
            return list(range(signal_width))
        if self.end is None:
            return [self.start]
        lo, hi = min(self.start, self.end), max(self.start, self.end)
        return list(range(lo, hi + 1))

    def width(self, signal_width: int) -> int:
        return len(self.bit_indices(signal_width))


@dataclass(frozen=True)
class SignalRef:
    access: SignalAccess
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Binary:
    op: str                    # + - ^ & | < > = != <= >= && ||
    left: "Expression"
    right: "Expression"
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Shift:
    op: str                    # << >>
    operand: "Expression"
    amount: "Number"
    loc: Loc = _locfield()


@dataclass(frozen=True)
class WidthOf:
    signal: str                # written `#x`
    loc: Loc = _locfield()


@dataclass(frozen=True)
class LoopVar:
    name: str                  # written `$i`
    loc: Loc = _locfield()


Expression = Union[Constant, SignalRef, Binary, Shift, WidthOf, LoopVar]

# Loop bounds / shift amounts: restricted compile-time forms.
Number = Union[Constant, LoopVar, WidthOf]


COMPARISON_OPS = ("<", ">", "=", "!=", "<=", ">=")
LOGIC_OPS = ("&&", "||")
ARITH_OPS = ("+", "-", "^", "&", "|")


# ----------------------------------------------------------------- statements

@dataclass(frozen=True)
class Skip:
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Swap:
    lhs: SignalAccess
    rhs: SignalAccess
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Unary:
    op: str                    # invert | increment | decrement
    target: SignalAccess
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Assign:
    op: str                    # xor | add | sub
    lhs: SignalAccess
    rhs: Expression
    loc: Loc = _locfield()


@dataclass(frozen=True)
class IfElse:
    cond: Expression
    then_body: tuple["Statement", ...]
    else_body: tuple["Statement", ...]
    fi_cond: Expression
    loc: Loc = _locfield()


@dataclass(frozen=True)
class ForLoop:
    var: str
    start: Number
    stop: Number
    step: Number | None        # None = default (1, or -1 when start > stop)
    body: tuple["Statement", ...]
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Call:
    module: str
    args: tuple[str, ...]
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Uncall:
    module: str
    args: tuple[str, ...]
    loc: Loc = _locfield()


Statement = Union[Skip, Swap, Unary, Assign, IfElse, ForLoop, Call, Uncall]


# -------------------------------------------------------------------- program

IN, OUT, INOUT, WIRE, STATE = "in", "out", "inout", "wire", "state"


@dataclass(frozen=True)
class Param:
    direction: str             # in | out | inout
    name: str
    width: int
    loc: Loc = _locfield()


@dataclass(frozen=True)
class LocalSignal:
    kind: str                  # wire | state
    name: str
    width: int
    loc: Loc = _locfield()


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    params: tuple[Param, ...]
    locals: tuple[LocalSignal, ...]
    body: tuple[Statement, ...]
    loc: Loc = _locfield()


@dataclass(frozen=True)
class Program:
    modules: tuple[ModuleDecl, ...]

    @property
    def entry(self) -> ModuleDecl:
        """Module named `main` when present, else the last declared one."""
        for mod in self.modules:
            if mod.name == "main":
                return mod
        return self.modules[-1]

    def module(self, name: str) -> ModuleDecl | None:
        for mod in self.modules:
            if mod.name == name:
                return mod
        return None


# ------------------------------------------------------------ pretty printing

_UNARY_SYMBOL = {"invert": "~=", "increment": "++=", "decrement": "--="}
_ASSIGN_SYMBOL = {"xor": "^=", "add": "+=", "sub": "-="}


def access_to_source(acc: SignalAccess) -> str:
    if acc.start is None:
        return acc.signal
    if acc.end is None:
        return f"{acc.signal}.{acc.start}"
    return f"{acc.signal}.{acc.start}:{acc.end}"


def expr_to_source(expr: Expression) -> str:
    """Fully parenthesized rendering; re-parses to the identical AST."""
    if isinstance(expr, Constant):
        return str(expr.value)
    if isinstance(expr, SignalRef):
        return access_to_source(expr.access)
    if isinstance(expr, Binary):
        return f"({expr_to_source(expr.left)} {expr.op} {expr_to_source(expr.right)})"
    if isinstance(expr, Shift):
        return f"({expr_to_source(expr.operand)} {expr.op} {expr_to_source(expr.amount)})"
    if isinstance(expr, WidthOf):
        return f"#{expr.signal}"
    if isinstance(expr, LoopVar):
        return f"${expr.name}"
    raise TypeError(f"unknown expression node {expr!r}")


def stmt_to_source(stmt: Statement, indent: int = 0) -> str:
    pad = "    " * indent
    if isinstance(stmt, Skip):
        return f"{pad}skip"
    if isinstance(stmt, Swap):
        return f"{pad}{access_to_source(stmt.lhs)} <=> {access_to_source(stmt.rhs)}"
    if isinstance(stmt, Unary):
        return f"{pad}{_UNARY_SYMBOL[stmt.op]} {access_to_source(stmt.target)}"
    if isinstance(stmt, Assign):
        return f"{pad}{access_to_source(stmt.lhs)} {_ASSIGN_SYMBOL[stmt.op]} {expr_to_source(stmt.rhs)}"
    if isinstance(stmt, IfElse):
        lines = [f"{pad}if ({expr_to_source(stmt.cond)}) then"]
        lines += [stmt_to_source(s, indent + 1) for s in stmt.then_body]
        lines.append(f"{pad}else")
        lines += [stmt_to_source(s, indent + 1) for s in stmt.else_body]
        lines.append(f"{pad}fi ({expr_to_source(stmt.fi_cond)})")
        return "\n".join(lines)
    if isinstance(stmt, ForLoop):
        head = f"{pad}for ${stmt.var} = {expr_to_source(stmt.start)} to {expr_to_source(stmt.stop)}"
        if stmt.step is not None:
            head += f" step {expr_to_source(stmt.step)}"
        lines = [head + " do"]
        lines += [stmt_to_source(s, indent + 1) for s in stmt.body]
        lines.append(f"{pad}rof")
        return "\n".join(lines)
    if isinstance(stmt, Call):
        return f"{pad}call {stmt.module}({', '.join(stmt.args)})"
    if isinstance(stmt, Uncall):
        return f"{pad}uncall {stmt.module}({', '.join(stmt.args)})"
    raise TypeError(f"unknown statement node {stmt!r}")


def _width_suffix(width: int) -> str:
    return f"({width})" if width else ""   # 0 = width omitted in the source


def module_to_source(mod: ModuleDecl) -> str:
    params = ", ".join(f"{p.direction} {p.name}{_width_suffix(p.width)}" for p in mod.params)
    lines = [f"module {mod.name}({params})"]
    for local in mod.locals:
        lines.append(f"    {local.kind} {local.name}{_width_suffix(local.width)}")
    lines += [stmt_to_source(s, 1) for s in mod.body]
    return "\n".join(lines)


def program_to_source(program: Program) -> str:
    return "\n\n".join(module_to_source(m) for m in program.modules) + "\n"
