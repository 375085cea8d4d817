from __future__ import annotations

from typing import Optional

from app.engine.base import ATOMS, BaseMatcher, Input
from app.models import (
    FAILED, Choice, Consumed, Empty, Expression, Grammar, NonTerminal, Not,
    PlainResult, Sequence, Star, Throw,
)


class PlainMatcher(BaseMatcher):
    """Ordinary PEG matching. Labels are erased: a throw is a failure and
    every choice recovers from every failure."""

    mode = "plain"

    def match(self, expr: Expression, pos: int) -> Optional[int]:
        self.tick()
        match expr:
            case Empty():
                return pos
            case NonTerminal(name):
                return self.match(self.grammar.rules[name], pos)
            case Sequence(left, right):
                mid = self.match(left, pos)
                return None if mid is None else self.match(right, mid)
            case Choice(left, right, _):
                end = self.match(left, pos)
                return end if end is not None else self.match(right, pos)
            case Star(body):
                while True:
                    end = self.match(body, pos)
                    if end is None:
                        return pos
                    pos = end
            case Not(body):
                return pos if self.match(body, pos) is None else None
            case Throw():
                return None
            case _ if isinstance(expr, ATOMS):
                return self.match_atom(expr, pos)
        raise TypeError(f"not an expression: {expr!r}")


def match_plain(grammar: Grammar, data: Input, start: int = 0, *,
                step_budget: Optional[int] = None) -> PlainResult:
    end = PlainMatcher(grammar, data, step_budget).run(start)
    return FAILED if end is None else Consumed(end)
