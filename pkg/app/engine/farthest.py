from __future__ import annotations

from typing import Optional

from app.engine.base import ATOMS, BaseMatcher, Input
from app.models import (
    FAILED, Choice, Consumed, Empty, Expression, Grammar, NonTerminal, Not,
    PlainResult, Sequence, Star, Throw,
)

Outcome = tuple[Optional[int], Optional[int]]


def smallest(a: Optional[int], b: Optional[int]) -> Optional[int]:
    """The farther of two failure positions; None stands for no failure."""
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class FarthestMatcher(BaseMatcher):
    """Plain matching that also reports the farthest position where any
    failure happened. Predicates never report positions from inside."""

    mode = "farthest"

    def match(self, expr: Expression, pos: int) -> Outcome:
        self.tick()
        match expr:
            case Empty():
                return pos, None
            case NonTerminal(name):
                return self.match(self.grammar.rules[name], pos)
            case Sequence(left, right):
                mid, v = self.match(left, pos)
                if mid is None:
                    return None, v
                end, w = self.match(right, mid)
                return end, smallest(v, w)
            case Choice(left, right, _):
                end, v = self.match(left, pos)
                if end is not None:
                    return end, v
                end, w = self.match(right, pos)
                return end, smallest(v, w)
            case Star(body):
                farthest = None
                while True:
                    end, v = self.match(body, pos)
                    farthest = smallest(farthest, v)
                    if end is None:
                        return pos, farthest
                    pos = end
            case Not(body):
                end, _ = self.match(body, pos)
                return (pos, None) if end is None else (None, pos)
            case Throw():
                return None, pos
            case _ if isinstance(expr, ATOMS):
                end = self.match_atom(expr, pos)
                return (end, None) if end is not None else (None, pos)
        raise TypeError(f"not an expression: {expr!r}")


def match_fft(grammar: Grammar, data: Input, start: int = 0, *,
              step_budget: Optional[int] = None) -> tuple[PlainResult, Optional[int]]:
    end, farthest = FarthestMatcher(grammar, data, step_budget).run(start)
    return (FAILED if end is None else Consumed(end)), farthest
