"""Tokenizer for SyReC source text.

Tokens carry 1-based line/column positions. `//` comments and whitespace are
skipped; every other character must belong to the token alphabet. Lexing
continues past bad characters so all lexical errors are reported together.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, DiagnosticSink, ParseError


KEYWORDS = frozenset({
    "module", "in", "out", "inout", "wire", "state",
    "if", "then", "else", "fi", "for", "to", "step", "do", "rof",
    "call", "uncall", "skip",
})

# Longest match first.
OPERATORS = (
    "<=>",
    "++=", "--=",
    "^=", "+=", "-=", "~=",
    "&&", "||", "<=", ">=", "!=", "<<", ">>",
    "+", "-", "^", "&", "|", "<", ">", "=",
    "(", ")", ",", ".", ":", ";",
)

_UNSUPPORTED = {"*": "multiplication", "/": "division", "%": "modulo"}

EOF = "eof"
IDENT = "ident"
INT = "int"
LOOPVAR = "loopvar"    # $name
WIDTHOF = "widthof"    # #name
KEYWORD = "keyword"
OP = "op"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch == "_"


def tokenize(source: str) -> list[Token]:
    """Tokenize `source`, raising ParseError with every lexical error found."""
    sink = DiagnosticSink()
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def advance(count: int) -> None:
        nonlocal i, line, col
        for _ in range(count):
            if source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "/" and source.startswith("//", i):
            while i < n and source[i] != "\n":
                advance(1)
            continue
        if ch in _UNSUPPORTED:
            sink.error(f"operator '{ch}' not supported ({_UNSUPPORTED[ch]} is outside the language subset)", line, col)
            advance(1)
            continue
        if _is_ident_start(ch):
            start, sl, sc = i, line, col
            while i < n and _is_ident_char(source[i]):
                advance(1)
            text = source[start:i]
            kind = KEYWORD if text in KEYWORDS else IDENT
            tokens.append(Token(kind, text, sl, sc))
            continue
        if ch.isdigit():
            start, sl, sc = i, line, col
            while i < n and source[i].isdigit():
                advance(1)
            tokens.append(Token(INT, source[start:i], sl, sc))
            continue
        if ch in "$#":
            sl, sc = line, col
            advance(1)
            if i < n and _is_ident_start(source[i]):
                start = i
                while i < n and _is_ident_char(source[i]):
                    advance(1)
                kind = LOOPVAR if ch == "$" else WIDTHOF
                tokens.append(Token(kind, source[start:i], sl, sc))
            else:
                sink.error(f"expected identifier after '{ch}'", sl, sc)
            continue
        matched = False
        for op in OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token(OP, op, line, col))
                advance(len(op))
                matched = True
                break
        if not matched:
            sink.error(f"unexpected character '{ch}'", line, col)
            advance(1)

    tokens.append(Token(EOF, "", line, col))
    if sink.has_errors:
        raise ParseError(sink.items)
    return tokens


def try_tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Non-raising variant: returns ([], diagnostics) on lexical failure."""
    try:
        return tokenize(source), []
    except ParseError as exc:
        return [], exc.diagnostics
