"""Recursive-descent parser producing the SyReC AST.

Statements are separated by `;` or by a line break; two statements on one
line without a separator are rejected. Expressions follow the precedence
ladder (tightest first): additive, shifts, `&`, `^`, `|`, comparisons,
`&&`, `||`. Shift amounts and loop bounds are compile-time numbers
(integer, `$var`, or `#signal`, optionally negated).
"""

from __future__ import annotations

from . import ast
from .diagnostics import Diagnostic, ParseError, error
from .lexer import EOF, IDENT, INT, KEYWORD, LOOPVAR, OP, WIDTHOF, Token, tokenize


class _Fail(Exception):
    def __init__(self, diag: Diagnostic):
        self.diag = diag


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # ---------------------------------------------------------------- helpers

    @property
    def la(self) -> Token:
        return self.tokens[self.pos]

    def _loc(self) -> ast.Loc:
        return ast.Loc(self.la.line, self.la.col)

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.la
        return tok.kind == kind and (text is None or tok.text == text)

    def at_keyword(self, *words: str) -> bool:
        return self.la.kind == KEYWORD and self.la.text in words

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            tok = self.la
            self.pos += 1
            return tok
        return None

    def expect(self, kind: str, text: str | None = None, what: str = "") -> Token:
        tok = self.accept(kind, text)
        if tok is None:
            found = self.la.text or "end of input"
            wanted = what or (text if text else kind)
            raise _Fail(error(f"expected {wanted}, found '{found}'", self.la.line, self.la.col))
        return tok

    # ---------------------------------------------------------------- program

    def program(self) -> ast.Program:
        modules = []
        while not self.at(EOF):
            modules.append(self.module())
        if not modules:
            raise _Fail(error("empty program: expected at least one module", 1, 1))
        return ast.Program(tuple(modules))

    def module(self) -> ast.ModuleDecl:
        loc = self._loc()
        self.expect(KEYWORD, "module")
        name = self.expect(IDENT, what="module name").text
        self.expect(OP, "(")
        params = []
        if not self.at(OP, ")"):
            params.append(self.param())
            while self.accept(OP, ","):
                params.append(self.param())
        self.expect(OP, ")")
        locals_ = []
        while self.at_keyword("wire", "state"):
            locals_.extend(self.local_decl())
        body = self.stmt_list()
        return ast.ModuleDecl(name, tuple(params), tuple(locals_), tuple(body), loc)

    def param(self) -> ast.Param:
        loc = self._loc()
        if not self.at_keyword("in", "out", "inout"):
            raise _Fail(error(f"expected parameter direction, found '{self.la.text}'", self.la.line, self.la.col))
        direction = self.la.text
        self.pos += 1
        name = self.expect(IDENT, what="parameter name").text
        width = self.opt_width()
        return ast.Param(direction, name, width, loc)

    def local_decl(self) -> list[ast.LocalSignal]:
        kind = self.la.text
        loc = self._loc()
        self.pos += 1
        decls = [ast.LocalSignal(kind, self.expect(IDENT, what="signal name").text, self.opt_width(), loc)]
        while self.accept(OP, ","):
            loc = self._loc()
            decls.append(ast.LocalSignal(kind, self.expect(IDENT, what="signal name").text, self.opt_width(), loc))
        return decls

    def opt_width(self) -> int:
        """Optional `(N)` width; 0 is a placeholder replaced by the analyzer's default."""
        if self.accept(OP, "("):
            tok = self.expect(INT, what="signal width")
            if int(tok.text) < 1:
                raise _Fail(error("signal width must be at least 1", tok.line, tok.col))
            self.expect(OP, ")")
            return int(tok.text)
        return 0

    # ------------------------------------------------------------- statements

    _STMT_END = ("else", "fi", "rof", "module")

    def stmt_list(self) -> list[ast.Statement]:
        stmts = [self.statement()]
        while True:
            separated = bool(self.accept(OP, ";"))
            if self.at(EOF) or self.at_keyword(*self._STMT_END):
                break
            if not separated and self.la.line == self.tokens[self.pos - 1].line:
                raise _Fail(error(f"expected ';' or line break before '{self.la.text}'", self.la.line, self.la.col))
            stmts.append(self.statement())
        return stmts

    def statement(self) -> ast.Statement:
        loc = self._loc()
        if self.accept(KEYWORD, "skip"):
            return ast.Skip(loc)
        if self.at_keyword("call", "uncall"):
            return self.call_stmt()
        if self.at_keyword("if"):
            return self.if_stmt()
        if self.at_keyword("for"):
            return self.for_stmt()
        for sym, op in (("~=", "invert"), ("++=", "increment"), ("--=", "decrement")):
            if self.accept(OP, sym):
                return ast.Unary(op, self.access(), loc)
        if self.at(IDENT):
            lhs = self.access()
            if self.accept(OP, "<=>"):
                return ast.Swap(lhs, self.access(), loc)
            for sym, op in (("^=", "xor"), ("+=", "add"), ("-=", "sub")):
                if self.accept(OP, sym):
                    return ast.Assign(op, lhs, self.expression(), loc)
            raise _Fail(error(f"expected assignment or swap operator, found '{self.la.text}'", self.la.line, self.la.col))
        raise _Fail(error(f"expected statement, found '{self.la.text or 'end of input'}'", self.la.line, self.la.col))

    def call_stmt(self) -> ast.Statement:
        loc = self._loc()
        is_call = self.la.text == "call"
        self.pos += 1
        name = self.expect(IDENT, what="module name").text
        self.expect(OP, "(")
        args = []
        if not self.at(OP, ")"):
            args.append(self.expect(IDENT, what="signal name").text)
            while self.accept(OP, ","):
                args.append(self.expect(IDENT, what="signal name").text)
        self.expect(OP, ")")
        node = ast.Call if is_call else ast.Uncall
        return node(name, tuple(args), loc)

    def if_stmt(self) -> ast.IfElse:
        loc = self._loc()
        self.expect(KEYWORD, "if")
        self.expect(OP, "(")
        cond = self.expression()
        self.expect(OP, ")")
        self.expect(KEYWORD, "then")
        then_body = self.stmt_list()
        self.expect(KEYWORD, "else")
        else_body = self.stmt_list()
        self.expect(KEYWORD, "fi")
        self.expect(OP, "(")
        fi_cond = self.expression()
        self.expect(OP, ")")
        return ast.IfElse(cond, tuple(then_body), tuple(else_body), fi_cond, loc)

    def for_stmt(self) -> ast.ForLoop:
        loc = self._loc()
        self.expect(KEYWORD, "for")
        var = self.expect(LOOPVAR, what="loop variable ($name)").text
        self.expect(OP, "=")
        start = self.number()
        self.expect(KEYWORD, "to")
        stop = self.number()
        step = self.number() if self.accept(KEYWORD, "step") else None
        self.expect(KEYWORD, "do")
        body = self.stmt_list()
        self.expect(KEYWORD, "rof")
        return ast.ForLoop(var, start, stop, step, tuple(body), loc)

    def access(self) -> ast.SignalAccess:
        loc = self._loc()
        name = self.expect(IDENT, what="signal name").text
        start = end = None
        if self.accept(OP, "."):
            start = int(self.expect(INT, what="bit index").text)
            if self.accept(OP, ":"):
                end = int(self.expect(INT, what="bit index").text)
        return ast.SignalAccess(name, start, end, loc)

    # ------------------------------------------------------------ expressions

    def expression(self) -> ast.Expression:
        return self.logic_or()

    def _binary_ladder(self, sub, ops: tuple[str, ...]) -> ast.Expression:
        left = sub()
        while self.la.kind == OP and self.la.text in ops:
            loc = ast.Loc(self.la.line, self.la.col)
            op = self.la.text
            self.pos += 1
            left = ast.Binary(op, left, sub(), loc)
        return left

    def logic_or(self) -> ast.Expression:
        return self._binary_ladder(self.logic_and, ("||",))

    def logic_and(self) -> ast.Expression:
        return self._binary_ladder(self.comparison, ("&&",))

    def comparison(self) -> ast.Expression:
        return self._binary_ladder(self.bit_or, ("<=", ">=", "!=", "<", ">", "="))

    def bit_or(self) -> ast.Expression:
        return self._binary_ladder(self.bit_xor, ("|",))

    def bit_xor(self) -> ast.Expression:
        return self._binary_ladder(self.bit_and, ("^",))

    def bit_and(self) -> ast.Expression:
        return self._binary_ladder(self.shift, ("&",))

    def shift(self) -> ast.Expression:
        left = self.additive()
        while self.la.kind == OP and self.la.text in ("<<", ">>"):
            loc = ast.Loc(self.la.line, self.la.col)
            op = self.la.text
            self.pos += 1
            left = ast.Shift(op, left, self.number(), loc)
        return left

    def additive(self) -> ast.Expression:
        return self._binary_ladder(self.primary, ("+", "-"))

    def primary(self) -> ast.Expression:
        loc = self._loc()
        if self.accept(OP, "("):
            expr = self.expression()
            self.expect(OP, ")")
            return expr
        tok = self.accept(INT)
        if tok:
            return ast.Constant(int(tok.text), loc)
        tok = self.accept(LOOPVAR)
        if tok:
            return ast.LoopVar(tok.text, loc)
        tok = self.accept(WIDTHOF)
        if tok:
            return ast.WidthOf(tok.text, loc)
        if self.at(IDENT):
            return ast.SignalRef(self.access(), loc)
        raise _Fail(error(f"expected expression, found '{self.la.text or 'end of input'}'", self.la.line, self.la.col))

    def number(self) -> ast.Number:
        """Compile-time number: [-] (integer | $var | #signal)."""
        loc = self._loc()
        negate = bool(self.accept(OP, "-"))
        tok = self.accept(INT)
        if tok:
            value = int(tok.text)
            return ast.Constant(-value if negate else value, loc)
        if negate:
            raise _Fail(error("expected integer after '-'", self.la.line, self.la.col))
        tok = self.accept(LOOPVAR)
        if tok:
            return ast.LoopVar(tok.text, loc)
        tok = self.accept(WIDTHOF)
        if tok:
            return ast.WidthOf(tok.text, loc)
        raise _Fail(error(f"expected number, found '{self.la.text or 'end of input'}'", self.la.line, self.la.col))


def parse(source: str) -> ast.Program:
    """Parse SyReC source text; raises ParseError carrying diagnostics."""
    tokens = tokenize(source)
    try:
        return _Parser(tokens).program()
    except _Fail as exc:
        raise ParseError([exc.diag]) from None


def try_parse(source: str) -> tuple[ast.Program | None, list[Diagnostic]]:
    try:
        return parse(source), []
    except ParseError as exc:
        return None, exc.diagnostics
