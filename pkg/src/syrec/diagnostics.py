"""Diagnostics shared by every compiler stage.

A Diagnostic pins a message to a source span. Stages collect diagnostics
rather than aborting on the first problem; errors block downstream stages,
warnings do not.
"""

from __future__ import annotations

from dataclasses import dataclass, field


ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str           # "error" | "warning"
    message: str
    line: int               # 1-based
    col: int                # 1-based
    end_line: int = 0       # 0 = same as line
    end_col: int = 0        # 0 = same as col

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.severity}: {self.message}"

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "message": self.message,
            "line": self.line,
            "col": self.col,
            "endLine": self.end_line or self.line,
            "endCol": self.end_col or self.col,
        }


def error(message: str, line: int, col: int, end_line: int = 0, end_col: int = 0) -> Diagnostic:
    return Diagnostic(ERROR, message, line, col, end_line, end_col)


def warning(message: str, line: int, col: int, end_line: int = 0, end_col: int = 0) -> Diagnostic:
    return Diagnostic(WARNING, message, line, col, end_line, end_col)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == ERROR for d in diagnostics)


class SyrecError(Exception):
    """Base for stage failures; carries the full diagnostic list."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics) or "unknown error")


class ParseError(SyrecError):
    """Lexical or syntactic failure."""


class AnalysisError(SyrecError):
    """Static-semantics failure (name resolution, widths, reversibility rules)."""


class ElaborationError(SyrecError):
    """Loop unrolling / constant folding failure."""


class InterpreterError(Exception):
    """Runtime failure inside the reference evaluator."""


class FiConditionError(InterpreterError):
    """fi-expression evaluated differently from the if-expression: the
    program is not reversible as written. Never silently ignored."""


class SynthesisError(Exception):
    """Lowering failure (line budget, overlap violations, unsupported ops)."""


class RealFormatError(Exception):
    """Malformed .real document; message carries the offending line number."""


@dataclass
class DiagnosticSink:
    """Accumulates diagnostics across a stage; exact duplicates are dropped."""

    items: list[Diagnostic] = field(default_factory=list)

    def _add(self, diag: Diagnostic) -> None:
        if diag not in self.items:
            self.items.append(diag)

    def error(self, message: str, line: int, col: int, end_line: int = 0, end_col: int = 0) -> None:
        self._add(error(message, line, col, end_line, end_col))

    def warning(self, message: str, line: int, col: int, end_line: int = 0, end_col: int = 0) -> None:
        self._add(warning(message, line, col, end_line, end_col))

    @property
    def has_errors(self) -> bool:
        return has_errors(self.items)
