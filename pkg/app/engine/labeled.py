"""Matching with labeled failures.

A failure carries a label and the position where it was produced. Ordered
choice only recovers from labels in its catch set, repetition and the negative
predicate only absorb ``fail``. The expected-list record is maintained
alongside, with every raised label counted as a failure.
"""
from __future__ import annotations

from typing import Optional, Union

from app.engine.base import ATOMS, BaseMatcher, Input
from app.engine.expected import VarStrategy, atom_item, join, join_var, predicate_item, token_item
from app.models import (
    FAIL, NO_FAILURE, Choice, Consumed, Empty, Expression, FailureRecord, Grammar,
    LabeledResult, NonTerminal, Not, Raised, Sequence, Star, Throw,
)

Step = tuple[Union[int, Raised], FailureRecord]


class LabeledMatcher(BaseMatcher):
    mode = "labeled"

    def __init__(self, grammar: Grammar, data: Input, step_budget: Optional[int] = None,
                 var_strategy: Union[VarStrategy, str] = VarStrategy.JOIN):
        super().__init__(grammar, data, step_budget)
        self.var_strategy = VarStrategy(var_strategy)

    def match(self, expr: Expression, pos: int) -> Step:
        self.tick()
        match expr:
            case Empty():
                return pos, NO_FAILURE
            case NonTerminal(name):
                outcome, record = self.match(self.grammar.rules[name], pos)
                if self.grammar.is_lexical(name):
                    if isinstance(outcome, Raised):
                        return outcome, FailureRecord.single(pos, token_item(self.grammar, name))
                    return outcome, NO_FAILURE
                if self.var_strategy is VarStrategy.JOIN:
                    record = join_var(record, pos, name)
                return outcome, record
            case Sequence(left, right):
                mid, r1 = self.match(left, pos)
                if isinstance(mid, Raised):
                    return mid, r1
                outcome, r2 = self.match(right, mid)
                return outcome, join(r1, r2)
            case Choice(left, right, catch):
                outcome, r1 = self.match(left, pos)
                if not isinstance(outcome, Raised) or outcome.label not in catch:
                    return outcome, r1
                outcome, r2 = self.match(right, pos)
                return outcome, join(r1, r2)
            case Star(body):
                record = NO_FAILURE
                while True:
                    outcome, inner = self.match(body, pos)
                    record = join(record, inner)
                    if isinstance(outcome, Raised):
                        return (pos if outcome.label == FAIL else outcome), record
                    pos = outcome
            case Not(body):
                outcome, _ = self.match(body, pos)
                if isinstance(outcome, Raised) and outcome.label == FAIL:
                    return pos, NO_FAILURE
                blame = FailureRecord.single(pos, predicate_item(expr))
                if isinstance(outcome, Raised):
                    return outcome, blame
                return Raised(FAIL, pos), blame
            case Throw(label):
                return Raised(label, pos), FailureRecord.single(pos, predicate_item(expr))
            case _ if isinstance(expr, ATOMS):
                end = self.match_atom(expr, pos)
                if end is None:
                    return Raised(FAIL, pos), FailureRecord.single(pos, atom_item(expr))
                return end, NO_FAILURE
        raise TypeError(f"not an expression: {expr!r}")


def match_labeled(grammar: Grammar, data: Input, start: int = 0, *,
                  var_strategy: Union[VarStrategy, str] = VarStrategy.JOIN,
                  step_budget: Optional[int] = None) -> tuple[LabeledResult, FailureRecord]:
    outcome, record = LabeledMatcher(grammar, data, step_budget, var_strategy).run(start)
    if isinstance(outcome, Raised):
        return outcome, record
    return Consumed(outcome), record
