"""Well-formedness checks that guarantee every engine terminates.

Conservative analysis: no rule may reach itself without consuming input, and
no repetition body may succeed without consuming input.
"""
from __future__ import annotations

from app.models import (
    AnySymbol, CharClass, Choice, Empty, Expression, Grammar, IssueKind, Literal,
    Not, NonTerminal, Sequence, Star, Terminal, Throw, ValidationIssue, walk,
)
from app.utils.logger import AppLogger

logger = AppLogger.get_logger(__name__)


def _nullable_with(expr: Expression, table: dict[str, bool]) -> bool:
    match expr:
        case Empty() | Star() | Not():
            return True
        case Terminal() | AnySymbol() | Literal() | CharClass() | Throw():
            return False
        case NonTerminal(name):
            return table.get(name, False)
        case Sequence(left, right):
            return _nullable_with(left, table) and _nullable_with(right, table)
        case Choice(left, right, _):
            return _nullable_with(left, table) or _nullable_with(right, table)
    raise TypeError(f"not an expression: {expr!r}")


def nullable_rules(grammar: Grammar) -> dict[str, bool]:
    """Least fixpoint of rule nullability; unknown rules count as non-nullable."""
    table = {name: False for name in grammar.rules}
    changed = True
    while changed:
        changed = False
        for name, body in grammar.rules.items():
            if not table[name] and _nullable_with(body, table):
                table[name] = True
                changed = True
    return table


def nullable(expr: Expression, grammar: Grammar) -> bool:
    """True iff some input lets ``expr`` succeed without consuming anything."""
    return _nullable_with(expr, nullable_rules(grammar))


def _left_calls(expr: Expression, table: dict[str, bool], out: list[str]) -> None:
    """Rules ``expr`` may invoke at its own start position."""
    match expr:
        case NonTerminal(name):
            if name not in out:
                out.append(name)
        case Sequence(left, right):
            _left_calls(left, table, out)
            if _nullable_with(left, table):
                _left_calls(right, table, out)
        case Choice(left, right, _):
            _left_calls(left, table, out)
            _left_calls(right, table, out)
        case Star(body) | Not(body):
            _left_calls(body, table, out)


def _reaches_itself(name: str, graph: dict[str, list[str]]) -> bool:
    seen: set[str] = set()
    stack = list(graph.get(name, []))
    while stack:
        current = stack.pop()
        if current == name:
            return True
        if current in seen:
            continue
        seen.add(current)
        stack.extend(graph.get(current, []))
    return False


def _used_labels(expr: Expression):
    for node in walk(expr):
        match node:
            case Throw(label):
                yield label
            case Choice(_, _, catch):
                yield from sorted(catch)


def validate(grammar: Grammar) -> list[ValidationIssue]:
    issues: list[ValidationIssue] = []
    if not grammar.rules:
        issues.append(ValidationIssue(IssueKind.EMPTY_GRAMMAR, grammar.start, "grammar has no rules"))
        return issues

    if grammar.start not in grammar.rules:
        issues.append(ValidationIssue(
            IssueKind.UNKNOWN_NONTERMINAL, grammar.start, f"start rule {grammar.start} is not defined"))

    table = nullable_rules(grammar)
    graph: dict[str, list[str]] = {}

    for name, body in grammar.rules.items():
        reported: set[str] = set()
        for node in walk(body):
            if isinstance(node, NonTerminal) and node.name not in grammar.rules and node.name not in reported:
                reported.add(node.name)
                issues.append(ValidationIssue(
                    IssueKind.UNKNOWN_NONTERMINAL, name, f"reference to undefined rule {node.name}"))

        for label in dict.fromkeys(_used_labels(body)):
            if not grammar.has_label(label):
                issues.append(ValidationIssue(
                    IssueKind.UNDECLARED_LABEL, name, f"label {label} is not declared"))

        for node in walk(body):
            if isinstance(node, Star) and _nullable_with(node.body, table):
                issues.append(ValidationIssue(
                    IssueKind.NULLABLE_STAR_BODY, name, "repetition body can succeed without consuming input"))

        calls: list[str] = []
        _left_calls(body, table, calls)
        graph[name] = calls

    for name in grammar.rules:
        if _reaches_itself(name, graph):
            issues.append(ValidationIssue(
                IssueKind.LEFT_RECURSION, name, f"rule {name} can invoke itself without consuming input"))

    if issues:
        logger.debug(f"Validation found {len(issues)} issue(s)")
    return issues
