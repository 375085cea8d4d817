"""Farthest-failure tracking with lists of expected items.

Every result carries a FailureRecord: the farthest failure position together
with the items (terminals, tokens, rules, predicates) that failed there.
"""
from __future__ import annotations

from enum import Enum
from typing import Optional, Union

from app.engine.base import BaseMatcher, Input
from app.grammar.printer import format_expression
from app.models import (
    FAILED, NO_FAILURE, AnySymbol, CharClass, Choice, ClassItem, Consumed, Empty,
    ExpectedItem, Expression, FailureRecord, Grammar, Literal, LiteralItem,
    NonTerminal, NonTerminalItem, Not, PlainResult, PredicateItem, Sequence, Star,
    Terminal, TerminalItem, Throw,
)


class VarStrategy(str, Enum):
    """How a non-lexical rule reports failures inside it.

    JOIN blames the rule itself when the farthest failure sits at its start;
    PROPAGATE passes the inner record through untouched.
    """

    JOIN = "join"
    PROPAGATE = "propagate"


def join(r1: FailureRecord, r2: FailureRecord) -> FailureRecord:
    if r1.is_empty:
        return r2
    if r2.is_empty:
        return r1
    if r1.at > r2.at:
        return r1
    if r2.at > r1.at:
        return r2
    merged = r1.expected + tuple(item for item in r2.expected if item not in r1.expected)
    return FailureRecord(r1.at, merged)


def join_var(record: FailureRecord, rule_start: int, name: str) -> FailureRecord:
    if record.at == rule_start:
        return FailureRecord.single(rule_start, NonTerminalItem(name))
    return record


def atom_item(expr: Expression) -> ExpectedItem:
    match expr:
        case Terminal(symbol):
            return TerminalItem(symbol)
        case Literal(text):
            return LiteralItem(text)
        case CharClass(_, name):
            return ClassItem(name)
        case AnySymbol():
            return ClassItem(".")
    raise TypeError(f"not an atom: {expr!r}")


def predicate_item(expr: Expression) -> PredicateItem:
    return PredicateItem(format_expression(expr))


def token_item(grammar: Grammar, name: str) -> ExpectedItem:
    """What a failing lexical rule reports: its token text when it has one."""
    alias = grammar.tokens.get(name)
    return LiteralItem(alias) if alias is not None else NonTerminalItem(name)


class ExpectedMatcher(BaseMatcher):
    mode = "expected"

    def __init__(self, grammar: Grammar, data: Input, step_budget: Optional[int] = None,
                 var_strategy: Union[VarStrategy, str] = VarStrategy.JOIN):
        super().__init__(grammar, data, step_budget)
        self.var_strategy = VarStrategy(var_strategy)

    def match(self, expr: Expression, pos: int) -> tuple[Optional[int], FailureRecord]:
        self.tick()
        match expr:
            case Empty():
                return pos, NO_FAILURE
            case NonTerminal(name):
                end, record = self.match(self.grammar.rules[name], pos)
                if self.grammar.is_lexical(name):
                    if end is None:
                        return None, FailureRecord.single(pos, token_item(self.grammar, name))
                    return end, NO_FAILURE
                if self.var_strategy is VarStrategy.JOIN:
                    record = join_var(record, pos, name)
                return end, record
            case Sequence(left, right):
                mid, r1 = self.match(left, pos)
                if mid is None:
                    return None, r1
                end, r2 = self.match(right, mid)
                return end, join(r1, r2)
            case Choice(left, right, _):
                end, r1 = self.match(left, pos)
                if end is not None:
                    return end, r1
                end, r2 = self.match(right, pos)
                return end, join(r1, r2)
            case Star(body):
                record = NO_FAILURE
                while True:
                    end, inner = self.match(body, pos)
                    record = join(record, inner)
                    if end is None:
                        return pos, record
                    pos = end
            case Not(body):
                end, _ = self.match(body, pos)
                if end is None:
                    return pos, NO_FAILURE
                return None, FailureRecord.single(pos, predicate_item(expr))
            case Throw():
                return None, FailureRecord.single(pos, predicate_item(expr))
            case Terminal() | AnySymbol() | CharClass() | Literal():
                end = self.match_atom(expr, pos)
                if end is None:
                    return None, FailureRecord.single(pos, atom_item(expr))
                return end, NO_FAILURE
        raise TypeError(f"not an expression: {expr!r}")


def match_ffl(grammar: Grammar, data: Input, start: int = 0,
              var_strategy: Union[VarStrategy, str] = VarStrategy.JOIN, *,
              step_budget: Optional[int] = None) -> tuple[PlainResult, FailureRecord]:
    end, record = ExpectedMatcher(grammar, data, step_budget, var_strategy).run(start)
    return (FAILED if end is None else Consumed(end)), record
