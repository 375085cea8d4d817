"""Grammar and result data model.

Every class here is immutable. Expressions form finite trees; a Grammar maps
rule names (in declaration order) to expressions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Union

FAIL = "fail"

Position = int


def escape_symbols(data: bytes, quote: str) -> str:
    """Render bytes as grammar-text characters, escaping what the reader would not accept."""
    out = []
    for byte in data:
        ch = chr(byte)
        if ch == "\\" or ch == quote:
            out.append("\\" + ch)
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\r":
            out.append("\\r")
        elif 0x20 <= byte < 0x7F:
            out.append(ch)
        else:
            out.append(f"\\x{byte:02x}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Parsing expressions
# ---------------------------------------------------------------------------

class Expression:
    """Base class of the eleven core parsing-expression variants."""

    __slots__ = ()


@dataclass(frozen=True)
class Empty(Expression):
    pass


@dataclass(frozen=True)
class Terminal(Expression):
    symbol: int

    def __post_init__(self):
        if not 0 <= self.symbol <= 0xFF:
            raise ValueError(f"terminal symbol out of range: {self.symbol}")


@dataclass(frozen=True)
class AnySymbol(Expression):
    pass


@dataclass(frozen=True)
class Literal(Expression):
    text: bytes

    def __post_init__(self):
        if not self.text:
            raise ValueError("literal text must be non-empty")


@dataclass(frozen=True)
class CharClass(Expression):
    members: frozenset[int]
    name: str


@dataclass(frozen=True)
class NonTerminal(Expression):
    name: str


@dataclass(frozen=True)
class Sequence(Expression):
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Choice(Expression):
    left: Expression
    right: Expression
    catch: frozenset[str] = frozenset({FAIL})

    def __post_init__(self):
        if not self.catch:
            raise ValueError("choice catch set must be non-empty")


@dataclass(frozen=True)
class Star(Expression):
    body: Expression


@dataclass(frozen=True)
class Not(Expression):
    body: Expression


@dataclass(frozen=True)
class Throw(Expression):
    label: str


def children(expr: Expression) -> tuple[Expression, ...]:
    match expr:
        case Sequence(left, right) | Choice(left, right, _):
            return (left, right)
        case Star(body) | Not(body):
            return (body,)
        case _:
            return ()


def walk(expr: Expression):
    """Pre-order traversal, left to right."""
    stack = [expr]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def sequence_of(*parts: Expression) -> Expression:
    """Left-nested Sequence of ``parts`` (Empty when there are none)."""
    if not parts:
        return Empty()
    result = parts[0]
    for part in parts[1:]:
        result = Sequence(result, part)
    return result


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class Grammar:
    rules: Mapping[str, Expression]
    start: str
    labels: tuple[str, ...] = (FAIL,)
    lexical: frozenset[str] = frozenset()
    messages: Mapping[str, str] = field(default_factory=dict)
    tokens: Mapping[str, bytes] = field(default_factory=dict)

    def __post_init__(self):
        if FAIL not in self.labels:
            object.__setattr__(self, "labels", (FAIL,) + tuple(self.labels))

    def is_lexical(self, name: str) -> bool:
        return name in self.lexical

    def has_label(self, label: str) -> bool:
        return label in self.labels


class IssueKind(str, Enum):
    UNKNOWN_NONTERMINAL = "unknown-nonterminal"
    UNDECLARED_LABEL = "undeclared-label"
    LEFT_RECURSION = "left-recursion"
    NULLABLE_STAR_BODY = "nullable-star-body"
    EMPTY_GRAMMAR = "empty-grammar"


@dataclass(frozen=True)
class ValidationIssue:
    kind: IssueKind
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value} in rule {self.rule}: {self.detail}"


# ---------------------------------------------------------------------------
# Match results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Consumed:
    end: Position


@dataclass(frozen=True)
class Failed:
    pass


FAILED = Failed()


@dataclass(frozen=True)
class Raised:
    label: str
    at: Position


PlainResult = Union[Consumed, Failed]
LabeledResult = Union[Consumed, Raised]


# ---------------------------------------------------------------------------
# Expected items and failure records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TerminalItem:
    symbol: int

    def display(self) -> str:
        return "'" + escape_symbols(bytes([self.symbol]), "'") + "'"


@dataclass(frozen=True)
class LiteralItem:
    text: bytes

    def display(self) -> str:
        return "'" + escape_symbols(self.text, "'") + "'"


@dataclass(frozen=True)
class ClassItem:
    name: str

    def display(self) -> str:
        return self.name


@dataclass(frozen=True)
class NonTerminalItem:
    name: str

    def display(self) -> str:
        return self.name


@dataclass(frozen=True)
class PredicateItem:
    text: str

    def display(self) -> str:
        return self.text


ExpectedItem = Union[TerminalItem, LiteralItem, ClassItem, NonTerminalItem, PredicateItem]


@dataclass(frozen=True)
class FailureRecord:
    """Farthest failure position plus what was expected there.

    ``at`` is None exactly when ``expected`` is empty.
    """

    at: Optional[Position] = None
    expected: tuple[ExpectedItem, ...] = ()

    def __post_init__(self):
        if (self.at is None) != (not self.expected):
            raise ValueError(f"inconsistent failure record: at={self.at!r}, expected={self.expected!r}")
        if len(set(self.expected)) != len(self.expected):
            raise ValueError("expected items must be unique")

    @classmethod
    def single(cls, at: Position, item: ExpectedItem) -> "FailureRecord":
        return cls(at, (item,))

    @property
    def is_empty(self) -> bool:
        return self.at is None


NO_FAILURE = FailureRecord()
