"""Grammar rewrites built from labels: try, nofail, star desugaring and the
four-values translation.

The four-values translation turns a star-free, predicate-free grammar into a
labeled grammar whose outcome, read through :func:`classify_outcome`, is one of
OK (consumed something), Epsn (succeeded on nothing), Fail (backtrackable) or
Error (not backtrackable).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from app.exceptions import TransformError
from app.models import (
    FAIL, AnySymbol, CharClass, Choice, Consumed, Empty, Expression, Grammar,
    LabeledResult, Literal, NonTerminal, Not, Raised, Sequence, Star, Terminal,
    Throw, sequence_of,
)
from app.utils.logger import AppLogger

logger = AppLogger.get_logger(__name__)

ERROR = "error"
EPSN = "epsn"


class Outcome(str, Enum):
    OK = "OK"
    EPSN = "Epsn"
    FAIL = "Fail"
    ERROR = "Error"


@dataclass(frozen=True)
class FourValue:
    kind: Outcome
    end: Optional[int] = None

    def __post_init__(self):
        if (self.kind is Outcome.OK) != (self.end is not None):
            raise ValueError("only OK carries an end position")

    def __str__(self) -> str:
        return f"OK({self.end})" if self.kind is Outcome.OK else self.kind.value


def expand_try(expr: Expression) -> Expression:
    """Errors raised inside ``expr`` become ordinary failures."""
    return Choice(expr, Throw(FAIL), frozenset({ERROR}))


def expand_nofail(expr: Expression) -> Expression:
    """Ordinary failures of ``expr`` become errors."""
    return Choice(expr, Throw(ERROR), frozenset({FAIL}))


# ---------------------------------------------------------------------------
# Star desugaring
# ---------------------------------------------------------------------------

class _StarRewriter:
    def __init__(self, grammar: Grammar):
        self.taken = set(grammar.rules)
        self.new_rules: dict[str, Expression] = {}

    def fresh(self, owner: str) -> str:
        n = 1
        while f"{owner}_star{n}" in self.taken:
            n += 1
        name = f"{owner}_star{n}"
        self.taken.add(name)
        return name

    def rewrite(self, expr: Expression, owner: str) -> Expression:
        match expr:
            case Star(body):
                inner = self.rewrite(body, owner)
                name = self.fresh(owner)
                self.new_rules[name] = Choice(Sequence(inner, NonTerminal(name)), Empty())
                return NonTerminal(name)
            case Sequence(left, right):
                return Sequence(self.rewrite(left, owner), self.rewrite(right, owner))
            case Choice(left, right, catch):
                return Choice(self.rewrite(left, owner), self.rewrite(right, owner), catch)
            case Not(body):
                return Not(self.rewrite(body, owner))
            case _:
                return expr


def desugar_star(grammar: Grammar) -> Grammar:
    """Replace every ``p*`` by a fresh rule ``A <- p A / e``."""
    rewriter = _StarRewriter(grammar)
    rules = {name: rewriter.rewrite(body, name) for name, body in grammar.rules.items()}
    if not rewriter.new_rules:
        return grammar
    rules.update(rewriter.new_rules)
    logger.debug(f"Star desugaring added {len(rewriter.new_rules)} rule(s)")
    return Grammar(rules, grammar.start, grammar.labels, grammar.lexical,
                   grammar.messages, grammar.tokens)


# ---------------------------------------------------------------------------
# Four values
# ---------------------------------------------------------------------------

def _four_sequence(first: Expression, second: Expression, epsn: str) -> Expression:
    guarded = Choice(Choice(second, Throw(ERROR)), Empty(), frozenset({epsn}))
    return Choice(Sequence(first, guarded), second, frozenset({epsn}))


def _four_choice(first: Expression, second: Expression, epsn: str) -> Expression:
    inner = Choice(first, Choice(second, Throw(epsn)), frozenset({epsn}))
    return Choice(inner, second)


class _FourValueTranslator:
    def __init__(self, epsn: str):
        self.epsn = epsn

    def translate(self, expr: Expression) -> Expression:
        epsn = self.epsn
        match expr:
            case Empty():
                return Throw(epsn)
            case Terminal() | AnySymbol() | CharClass() | NonTerminal():
                return expr
            case Literal(text):
                return self.translate(sequence_of(*(Terminal(b) for b in text)))
            case Throw(label) if label in (FAIL, ERROR):
                return expr
            case Sequence(left, right):
                return _four_sequence(self.translate(left), self.translate(right), epsn)
            case Choice(body, Throw(label), catch) if label == FAIL and catch == frozenset({ERROR}):
                return expand_try(self.translate(body))
            case Choice(body, Throw(label), catch) if label == ERROR and catch == frozenset({FAIL}):
                return expand_nofail(self.translate(body))
            case Choice(left, right, catch) if catch == frozenset({FAIL}):
                return _four_choice(self.translate(left), self.translate(right), epsn)
            case Star():
                raise TransformError("repetition must be desugared before the four-values translation")
            case Not():
                raise TransformError("predicates have no four-values translation")
            case Throw(label):
                raise TransformError(f"throw of label {label} has no four-values translation")
            case Choice(_, _, catch):
                raise TransformError(f"labeled choice /{{{','.join(sorted(catch))}}} has no four-values translation")
        raise TypeError(f"not an expression: {expr!r}")


def four_values(grammar: Grammar, epsn: str = EPSN) -> Grammar:
    if grammar.has_label(epsn):
        raise TransformError(f"label {epsn} is already declared")
    translator = _FourValueTranslator(epsn)
    rules = {name: translator.translate(body) for name, body in grammar.rules.items()}
    labels = tuple(grammar.labels) + (epsn,)
    if ERROR not in labels:
        labels += (ERROR,)
    logger.debug(f"Four-values translation of {len(rules)} rule(s)")
    return Grammar(rules, grammar.start, labels, grammar.lexical, grammar.messages, grammar.tokens)


def classify_outcome(result: LabeledResult, start: int, epsn: str = EPSN) -> FourValue:
    match result:
        case Consumed(end) if end > start:
            return FourValue(Outcome.OK, end)
        case Consumed(end):
            raise TransformError(f"translated grammar succeeded without consuming input at {end}")
        case Raised(label, _) if label == epsn:
            return FourValue(Outcome.EPSN)
        case Raised(label, _) if label == FAIL:
            return FourValue(Outcome.FAIL)
        case Raised(label, _) if label == ERROR:
            return FourValue(Outcome.ERROR)
        case Raised(label, _):
            raise TransformError(f"label {label} is not a four-values outcome")
    raise TypeError(f"not a labeled result: {result!r}")
