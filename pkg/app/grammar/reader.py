"""Reader for the textual grammar format (see grammar-format.md).

The file is tokenized as bytes so every SourceSpan is a byte offset. Parsing
builds a surface tree that may still contain sugar (``&p``, ``p+``, ``p?``,
``expect``, ``try``, ``nofail``); :func:`desugar` rewrites it to the core
expression variants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from app.exceptions import GrammarFileError, GrammarSyntaxError, SourceSpan
from app.grammar.printer import class_name
from app.grammar.transforms import ERROR, expand_nofail, expand_try
from app.models import (
    FAIL, AnySymbol, CharClass, Choice, Empty, Expression, Grammar, Literal, Not,
    NonTerminal, Sequence, Star, Terminal, Throw,
)
from app.utils.logger import AppLogger

logger = AppLogger.get_logger(__name__)

_KEYWORDS = {b"lex", b"label"}
_EPSILON = b"e"

_TOKEN_RE = re.compile(rb"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<arrow><-)
  | (?P<lchoice>/\{)
  | (?P<call>(?:expect|try|nofail)\()
  | (?P<word>[A-Za-z0-9_]+)
  | (?P<char>'(?:\\.|[^'\\\n])*')
  | (?P<string>"(?:\\.|[^"\\\n])*")
  | (?P<cls>\[(?:\\.|[^\]\\\n])*\])
  | (?P<punct>[/(){},!&*+?.^=])
""", re.VERBOSE)

_SIMPLE_ESCAPES = {
    ord("n"): 0x0A, ord("t"): 0x09, ord("r"): 0x0D,
    ord("\\"): 0x5C, ord("'"): 0x27, ord('"'): 0x22,
    ord("]"): 0x5D, ord("["): 0x5B, ord("-"): 0x2D, ord("^"): 0x5E,
}
_HEX = re.compile(rb"[0-9a-fA-F]{2}")


# ---------------------------------------------------------------------------
# Surface syntax (sugar that desugar removes)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class And:
    body: "Surface"


@dataclass(frozen=True)
class Plus:
    body: "Surface"


@dataclass(frozen=True)
class Optional_:
    body: "Surface"


@dataclass(frozen=True)
class Expect:
    body: "Surface"
    label: str


@dataclass(frozen=True)
class Try:
    body: "Surface"


@dataclass(frozen=True)
class NoFail:
    body: "Surface"


Surface = Union[Expression, And, Plus, Optional_, Expect, Try, NoFail]


def desugar(expr: Surface) -> Expression:
    """Rewrite a surface expression to the eleven core variants."""
    match expr:
        case And(body):
            return Not(Not(desugar(body)))
        case Plus(body):
            core = desugar(body)
            return Sequence(core, Star(core))
        case Optional_(body):
            return Choice(desugar(body), Empty())
        case Expect(body, label):
            return Choice(desugar(body), Throw(label))
        case Try(body):
            return expand_try(desugar(body))
        case NoFail(body):
            return expand_nofail(desugar(body))
        case Sequence(left, right):
            return Sequence(desugar(left), desugar(right))
        case Choice(left, right, catch):
            return Choice(desugar(left), desugar(right), catch)
        case Star(body):
            return Star(desugar(body))
        case Not(body):
            return Not(desugar(body))
        case Expression():
            return expr
    raise TypeError(f"not a surface expression: {expr!r}")


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str
    text: bytes
    start: int
    end: int
    line_start: bool

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.start, self.end)


class _Failure(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.message = message
        self.span = span


def _tokenize(data: bytes) -> tuple[list[_Token], list[GrammarFileError]]:
    tokens: list[_Token] = []
    errors: list[GrammarFileError] = []
    pos = 0
    line_start = True
    while pos < len(data):
        m = _TOKEN_RE.match(data, pos)
        if m is None:
            errors.append(GrammarFileError(
                f"unexpected character {data[pos:pos + 1]!r}", SourceSpan(pos, pos + 1)))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "ws":
            if b"\n" in m.group():
                line_start = True
        else:
            tokens.append(_Token(kind, m.group(), m.start(), m.end(), line_start))
            line_start = False
        pos = m.end()
    tokens.append(_Token("eof", b"", len(data), len(data), True))
    return tokens, errors


def _unescape(body: bytes, offset: int) -> list[tuple[int, bool]]:
    """Decode escapes; returns (symbol, was_escaped) pairs."""
    out: list[tuple[int, bool]] = []
    i = 0
    while i < len(body):
        byte = body[i]
        if byte != 0x5C:
            out.append((byte, False))
            i += 1
            continue
        nxt = body[i + 1]
        if nxt in _SIMPLE_ESCAPES:
            out.append((_SIMPLE_ESCAPES[nxt], True))
            i += 2
        elif nxt == ord("x") and _HEX.match(body, i + 2):
            out.append((int(body[i + 2:i + 4], 16), True))
            i += 4
        else:
            raise _Failure(f"unknown escape '\\{chr(nxt)}'",
                           SourceSpan(offset + i, offset + i + 2))
    return out


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _GrammarParser:
    def __init__(self, data: bytes):
        self.data = data
        self.tokens, self.errors = _tokenize(data)
        self.index = 0
        self.rules: dict[str, Expression] = {}
        self.lexical: set[str] = set()
        self.tokens_alias: dict[str, bytes] = {}
        self.labels: list[str] = [FAIL]
        self.messages: dict[str, str] = {}
        self.references: list[tuple[str, SourceSpan]] = []
        self.label_uses: list[tuple[str, SourceSpan]] = []
        self.uses_error_label = False

    # -- token helpers -------------------------------------------------------

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> _Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        token = self.current
        if token.kind != "eof":
            self.index += 1
        return token

    def is_punct(self, text: bytes, token: Optional[_Token] = None) -> bool:
        token = token or self.current
        return token.kind == "punct" and token.text == text

    def expect_punct(self, text: bytes, what: str) -> _Token:
        if not self.is_punct(text):
            raise _Failure(f"expected {what}", self.current.span)
        return self.advance()

    def expect_word(self, what: str) -> _Token:
        if self.current.kind != "word":
            raise _Failure(f"expected {what}", self.current.span)
        return self.advance()

    def at_item_start(self) -> bool:
        token = self.current
        if token.kind == "eof":
            return True
        if token.kind != "word":
            return False
        return token.text in _KEYWORDS or self.peek().kind == "arrow"

    # -- top level -----------------------------------------------------------

    def parse(self) -> None:
        while self.current.kind != "eof":
            try:
                self.parse_item()
            except _Failure as failure:
                self.errors.append(GrammarFileError(failure.message, failure.span))
                self.recover()

    def recover(self) -> None:
        self.advance()
        while not (self.current.line_start and self.at_item_start()):
            self.advance()

    def parse_item(self) -> None:
        token = self.current
        if token.kind == "word" and token.text == b"label":
            self.parse_label()
        elif token.kind == "word" and token.text == b"lex":
            self.advance()
            self.parse_rule(lexical=True)
        elif token.kind == "word":
            self.parse_rule(lexical=False)
        else:
            raise _Failure("expected a rule or label declaration", token.span)

    def parse_label(self) -> None:
        self.advance()
        name_token = self.expect_word("a label name")
        name = name_token.text.decode("ascii")
        message = None
        if self.is_punct(b"="):
            self.advance()
            if self.current.kind != "string":
                raise _Failure("expected a quoted message", self.current.span)
            message_token = self.advance()
            raw = bytes(b for b, _ in _unescape(message_token.text[1:-1], message_token.start + 1))
            try:
                message = raw.decode("utf-8")
            except UnicodeDecodeError:
                raise _Failure("label message is not valid UTF-8", message_token.span)
        if name == FAIL:
            raise _Failure("label fail is implicit and cannot be declared", name_token.span)
        if name in self.labels:
            raise _Failure(f"label {name} is already declared", name_token.span)
        self.labels.append(name)
        if message is not None:
            self.messages[name] = message

    def parse_rule(self, lexical: bool) -> None:
        name_token = self.expect_word("a rule name")
        name = name_token.text.decode("ascii")
        if name_token.text in _KEYWORDS or name_token.text == _EPSILON or name_token.text[:1].isdigit():
            raise _Failure(f"{name} cannot be used as a rule name", name_token.span)
        alias = None
        if lexical and self.current.kind == "word" and self.current.text == b"as":
            self.advance()
            alias_token = self.current
            if alias_token.kind not in ("char", "string"):
                raise _Failure("expected a quoted token name after 'as'", alias_token.span)
            self.advance()
            alias = bytes(b for b, _ in _unescape(alias_token.text[1:-1], alias_token.start + 1))
            if not alias:
                raise _Failure("token name must be non-empty", alias_token.span)
        if self.current.kind != "arrow":
            raise _Failure("expected '<-'", self.current.span)
        self.advance()
        body = desugar(self.parse_choice())
        if not (self.current.line_start and self.at_item_start()):
            raise _Failure("unexpected token after rule body", self.current.span)
        if name in self.rules:
            raise _Failure(f"rule {name} is already defined", name_token.span)
        self.rules[name] = body
        if lexical:
            self.lexical.add(name)
            if alias is not None:
                self.tokens_alias[name] = alias

    # -- expressions ---------------------------------------------------------

    def parse_choice(self) -> Surface:
        left = self.parse_sequence()
        while True:
            if self.is_punct(b"/"):
                self.advance()
                catch = frozenset({FAIL})
            elif self.current.kind == "lchoice":
                self.advance()
                catch = self.parse_label_set()
            else:
                return left
            right = self.parse_sequence()
            left = Choice(left, right, catch)

    def parse_label_set(self) -> frozenset[str]:
        names = []
        while True:
            token = self.expect_word("a label name")
            names.append(token.text.decode("ascii"))
            self.label_uses.append((names[-1], token.span))
            if self.is_punct(b","):
                self.advance()
                continue
            self.expect_punct(b"}", "'}' closing the label set")
            return frozenset(names)

    def starts_prefix(self) -> bool:
        token = self.current
        if token.kind in ("char", "string", "cls", "call"):
            return True
        if token.kind == "punct":
            return token.text in (b"!", b"&", b"(", b".", b"^")
        if token.kind == "word":
            return not (token.text in _KEYWORDS or self.peek().kind == "arrow")
        return False

    def parse_sequence(self) -> Surface:
        if not self.starts_prefix():
            raise _Failure("expected an expression", self.current.span)
        result = self.parse_prefix()
        while self.starts_prefix():
            result = Sequence(result, self.parse_prefix())
        return result

    def parse_prefix(self) -> Surface:
        if self.is_punct(b"!"):
            self.advance()
            return Not(self.parse_prefix())
        if self.is_punct(b"&"):
            self.advance()
            return And(self.parse_prefix())
        return self.parse_postfix()

    def parse_postfix(self) -> Surface:
        result = self.parse_primary()
        while True:
            if self.is_punct(b"*"):
                result = Star(result)
            elif self.is_punct(b"+"):
                result = Plus(result)
            elif self.is_punct(b"?"):
                result = Optional_(result)
            else:
                return result
            self.advance()

    def parse_primary(self) -> Surface:
        token = self.current
        if token.kind == "char":
            self.advance()
            symbols = _unescape(token.text[1:-1], token.start + 1)
            if len(symbols) != 1:
                raise _Failure("a quoted terminal must be exactly one symbol; use \"...\" for text", token.span)
            return Terminal(symbols[0][0])
        if token.kind == "string":
            self.advance()
            text = bytes(b for b, _ in _unescape(token.text[1:-1], token.start + 1))
            if not text:
                raise _Failure("empty literal; use e for the empty expression", token.span)
            return Literal(text)
        if token.kind == "cls":
            self.advance()
            return self.make_class(token)
        if token.kind == "call":
            return self.parse_call()
        if self.is_punct(b"("):
            self.advance()
            inner = self.parse_choice()
            self.expect_punct(b")", "')'")
            return inner
        if self.is_punct(b"."):
            self.advance()
            return AnySymbol()
        if self.is_punct(b"^"):
            self.advance()
            label_token = self.expect_word("a label after '^'")
            label = label_token.text.decode("ascii")
            self.label_uses.append((label, SourceSpan(token.start, label_token.end)))
            return Throw(label)
        if token.kind == "word":
            self.advance()
            if token.text == _EPSILON:
                return Empty()
            name = token.text.decode("ascii")
            self.references.append((name, token.span))
            return NonTerminal(name)
        raise _Failure("expected an expression", token.span)

    def parse_call(self) -> Surface:
        token = self.advance()
        kind = token.text[:-1]
        body = self.parse_choice()
        if kind == b"expect":
            self.expect_punct(b",", "',' before the label")
            label_token = self.expect_word("a label name")
            label = label_token.text.decode("ascii")
            self.label_uses.append((label, label_token.span))
            self.expect_punct(b")", "')'")
            return Expect(body, label)
        self.expect_punct(b")", "')'")
        self.uses_error_label = True
        return Try(body) if kind == b"try" else NoFail(body)

    def make_class(self, token: _Token) -> CharClass:
        items = _unescape(token.text[1:-1], token.start + 1)
        members: set[int] = set()
        i = 0
        while i < len(items):
            symbol, _ = items[i]
            if i + 2 < len(items) and items[i + 1] == (ord("-"), False):
                high = items[i + 2][0]
                if high < symbol:
                    raise _Failure("class range is reversed", token.span)
                members.update(range(symbol, high + 1))
                i += 3
            else:
                members.add(symbol)
                i += 1
        if not members:
            raise _Failure("empty character class", token.span)
        frozen = frozenset(members)
        return CharClass(frozen, class_name(frozen))

    # -- result --------------------------------------------------------------

    def check_references(self) -> None:
        for name, span in self.references:
            if name not in self.rules:
                self.errors.append(GrammarFileError(f"reference to undefined rule {name}", span))
        if self.uses_error_label and ERROR not in self.labels:
            self.labels.append(ERROR)
        for label, span in self.label_uses:
            if label not in self.labels:
                self.errors.append(GrammarFileError(f"label {label} is not declared", span))

    def build(self, start: Optional[str]) -> Grammar:
        self.parse()
        self.check_references()
        if not self.rules and not self.errors:
            self.errors.append(GrammarFileError("grammar has no rules", SourceSpan(0, 0)))
        if start is not None and self.rules and start not in self.rules:
            self.errors.append(GrammarFileError(f"start rule {start} is not defined", SourceSpan(0, 0)))
        if self.errors:
            self.errors.sort(key=lambda e: (e.span.start, e.span.end))
            raise GrammarSyntaxError(self.errors)
        return Grammar(
            rules=dict(self.rules),
            start=start or next(iter(self.rules)),
            labels=tuple(self.labels),
            lexical=frozenset(self.lexical),
            messages=dict(self.messages),
            tokens=dict(self.tokens_alias),
        )


def parse_grammar(text: Union[bytes, str], start: Optional[str] = None) -> Grammar:
    """Read grammar text; raises GrammarSyntaxError listing every problem found."""
    data = text.encode("utf-8") if isinstance(text, str) else text
    return _GrammarParser(data).build(start)


def load_grammar(path: Union[str, Path], start: Optional[str] = None) -> Grammar:
    path = Path(path)
    try:
        grammar = parse_grammar(path.read_bytes(), start)
    except GrammarSyntaxError as e:
        logger.info(f"Grammar {path} has {len(e.errors)} error(s)")
        raise
    logger.debug(f"Loaded grammar {path}: {len(grammar.rules)} rules, {len(grammar.labels)} labels")
    return grammar
