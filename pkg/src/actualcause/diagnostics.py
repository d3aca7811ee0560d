"""Structured diagnostics shared by the parser and the model validator."""

from __future__ import annotations

from dataclasses import dataclass, field

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """One problem found in source text or in an in-memory model.

    ``span`` is a half-open byte offset range into the source, when the
    diagnostic came from parsing; model-level checks leave it None.
    """

    severity: str
    code: str
    message: str
    span: tuple[int, int] | None = None
    suggestion: str | None = None
    variable: str | None = None
    witness: dict | None = field(default=None, hash=False)

    def render(self, source: str | None = None) -> str:
        loc = ""
        if self.span is not None and source is not None:
            line = source.encode("utf-8")[: self.span[0]].count(b"\n") + 1
            loc = f"line {line}: "
        text = f"{self.severity}[{self.code}]: {loc}{self.message}"
        if self.suggestion:
            text += f" ({self.suggestion})"
        return text


def errors_in(diagnostics) -> list[Diagnostic]:
    return [d for d in diagnostics if d.severity == ERROR]
