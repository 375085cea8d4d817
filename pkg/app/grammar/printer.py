"""Render expressions and grammars back to grammar-text syntax."""
from __future__ import annotations

from app.models import (
    FAIL, AnySymbol, CharClass, Choice, Empty, Expression, Grammar, Literal, Not,
    NonTerminal, Sequence, Star, Terminal, Throw, escape_symbols,
)

# binding strength, loosest first
_CHOICE, _SEQUENCE, _PREFIX, _POSTFIX, _ATOM = range(5)

_CLASS_SPECIALS = {ord("]"), ord("["), ord("\\"), ord("-"), ord("^")}


def _class_char(symbol: int) -> str:
    if symbol in _CLASS_SPECIALS:
        return "\\" + chr(symbol)
    return escape_symbols(bytes([symbol]), "]")


def class_name(members: frozenset[int]) -> str:
    """Canonical bracket text for a set of symbols, ranges compressed."""
    ordered = sorted(members)
    parts = []
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and ordered[j + 1] == ordered[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{_class_char(ordered[i])}-{_class_char(ordered[j])}")
        else:
            parts.extend(_class_char(s) for s in ordered[i:j + 1])
        i = j + 1
    return "[" + "".join(parts) + "]"


def _strength(expr: Expression) -> int:
    match expr:
        case Choice():
            return _CHOICE
        case Sequence():
            return _SEQUENCE
        case Not():
            return _PREFIX
        case Star():
            return _POSTFIX
        case _:
            return _ATOM


def _wrap(expr: Expression, minimum: int) -> str:
    text = format_expression(expr)
    return f"({text})" if _strength(expr) < minimum else text


def format_expression(expr: Expression) -> str:
    match expr:
        case Empty():
            return "e"
        case AnySymbol():
            return "."
        case Terminal(symbol):
            return "'" + escape_symbols(bytes([symbol]), "'") + "'"
        case Literal(text):
            return '"' + escape_symbols(text, '"') + '"'
        case CharClass(members, _):
            return class_name(members)
        case NonTerminal(name):
            return name
        case Throw(label):
            return f"^{label}"
        case Sequence(left, right):
            return f"{_wrap(left, _SEQUENCE)} {_wrap(right, _SEQUENCE + 1)}"
        case Choice(left, right, catch):
            op = "/" if catch == frozenset({FAIL}) else "/{" + ",".join(sorted(catch)) + "}"
            return f"{_wrap(left, _CHOICE)} {op} {_wrap(right, _CHOICE + 1)}"
        case Star(body):
            return f"{_wrap(body, _POSTFIX)}*"
        case Not(body):
            return f"!{_wrap(body, _PREFIX)}"
    raise TypeError(f"not an expression: {expr!r}")


def format_grammar(grammar: Grammar) -> str:
    lines = []
    for label in grammar.labels:
        if label == FAIL:
            continue
        message = grammar.messages.get(label)
        if message is None:
            lines.append(f"label {label}")
        else:
            lines.append(f'label {label} = "{escape_symbols(message.encode("utf-8"), chr(34))}"')
    if lines:
        lines.append("")
    # start rule first so a re-read picks the same start
    names = [grammar.start] + [n for n in grammar.rules if n != grammar.start]
    for name in names:
        head = name
        if grammar.is_lexical(name):
            head = f"lex {name}"
            if name in grammar.tokens:
                head += ' as "' + escape_symbols(grammar.tokens[name], '"') + '"'
        lines.append(f"{head} <- {format_expression(grammar.rules[name])}")
    return "\n".join(lines) + "\n"
