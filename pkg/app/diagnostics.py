"""Human-readable syntax error messages built from engine outcomes."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from app.engine.base import Input, as_bytes
from app.exceptions import DiagnosticError
from app.models import FAIL, FailureRecord, Grammar
from config import Config

END_OF_INPUT = "end of input"

_WORD = re.compile(rb"[A-Za-z0-9_]+")

LATEST_FIRST = "latest-first"
RECORDED = "recorded"


@dataclass(frozen=True)
class Diagnostic:
    source: str
    line: int
    column: int
    unexpected: str
    message: str
    expected: tuple[str, ...] = ()
    label: Optional[str] = None

    def __post_init__(self):
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def __str__(self) -> str:
        return self.message


def line_col(data: Input, pos: int) -> tuple[int, int]:
    data = as_bytes(data)
    if not 0 <= pos <= len(data):
        raise DiagnosticError(f"position {pos} outside input of length {len(data)}")
    line = data.count(b"\n", 0, pos) + 1
    column = pos - (data.rfind(b"\n", 0, pos) + 1) + 1
    return line, column


def position_of(data: Input, line: int, column: int) -> int:
    """Inverse of line_col."""
    data = as_bytes(data)
    offset = 0
    for _ in range(line - 1):
        newline = data.find(b"\n", offset)
        if newline < 0:
            raise DiagnosticError(f"input has fewer than {line} lines")
        offset = newline + 1
    pos = offset + column - 1
    line_end = data.find(b"\n", offset)
    if column < 1 or pos > (len(data) if line_end < 0 else line_end):
        raise DiagnosticError(f"column {column} outside line {line}")
    return pos


def unexpected_lexeme(data: Input, pos: int) -> str:
    data = as_bytes(data)
    if pos >= len(data):
        return END_OF_INPUT
    m = _WORD.match(data, pos)
    found = m.group() if m else data[pos:pos + 1]
    return found.decode("utf-8", errors="backslashreplace")


def _located(name: str, data: bytes, pos: int) -> tuple[int, int, str, str]:
    line, column = line_col(data, pos)
    return line, column, unexpected_lexeme(data, pos), f"{name}:{line}:{column}: syntax error"


def render_position(name: str, data: Input, pos: int) -> Diagnostic:
    data = as_bytes(data)
    line, column, lexeme, head = _located(name, data, pos)
    return Diagnostic(name, line, column, lexeme, f"{head}, unexpected '{lexeme}'")


def render_ffl(name: str, data: Input, record: FailureRecord, order: Optional[str] = None) -> Diagnostic:
    """``unexpected '...', expecting ...`` message for a farthest-failure record.

    Items are listed latest-first unless ``order`` (or PEG_EXPECTED_ORDER) is
    ``recorded``. Alternatives are tried left to right, so latest-first names
    the token closest to the failing position first.
    """
    if record.is_empty:
        raise DiagnosticError("cannot render an empty failure record")
    order = order or Config.EXPECTED_ORDER
    if order not in (LATEST_FIRST, RECORDED):
        raise DiagnosticError(f"unknown expected-list order {order!r}")
    data = as_bytes(data)
    items = [item.display() for item in record.expected]
    if order == LATEST_FIRST:
        items.reverse()
    line, column, lexeme, head = _located(name, data, record.at)
    message = f"{head}, unexpected '{lexeme}', expecting {', '.join(items)}"
    return Diagnostic(name, line, column, lexeme, message, tuple(items))


def render_label(grammar: Grammar, label: str, pos: int, data: Input, name: str,
                 fallback: FailureRecord, order: Optional[str] = None) -> Diagnostic:
    if label == FAIL:
        return render_ffl(name, data, fallback, order)
    data = as_bytes(data)
    line, column, lexeme, head = _located(name, data, pos)
    text = grammar.messages.get(label)
    message = f"{head}, {text}" if text is not None else f"{head} [{label}]"
    return Diagnostic(name, line, column, lexeme, message, label=label)
