import pytest

from app.grammar import desugar_star, nullable, nullable_rules, validate
from app.models import (
    AnySymbol, Choice, Empty, Grammar, IssueKind, Not, NonTerminal, Sequence, Star,
    Terminal, Throw,
)

A = Terminal(ord("a"))


def kinds(grammar):
    return [(issue.kind, issue.rule) for issue in validate(grammar)]


def test_direct_left_recursion(grammar):
    assert kinds(grammar("A <- A 'a'")) == [(IssueKind.LEFT_RECURSION, "A")]


def test_nullable_star_body(grammar):
    assert kinds(grammar("A <- (e)*")) == [(IssueKind.NULLABLE_STAR_BODY, "A")]


def test_indirect_left_recursion_through_nullable_prefix(grammar):
    issues = kinds(grammar("A <- B 'x'", "B <- 'y'? A"))
    assert (IssueKind.LEFT_RECURSION, "A") in issues
    assert (IssueKind.LEFT_RECURSION, "B") in issues


def test_recursion_after_consumption_is_fine(grammar):
    assert validate(grammar("A <- '(' A ')' / 'x'")) == []


def test_predicate_bodies_count_as_left_calls(grammar):
    assert kinds(grammar("A <- !A 'a'")) == [(IssueKind.LEFT_RECURSION, "A")]


def test_unknown_reference_and_undeclared_label():
    g = Grammar({"S": Sequence(NonTerminal("Missing"), Throw("oops"))}, "S")
    assert kinds(g) == [
        (IssueKind.UNKNOWN_NONTERMINAL, "S"),
        (IssueKind.UNDECLARED_LABEL, "S"),
    ]


def test_catch_labels_must_be_declared():
    g = Grammar({"S": Choice(A, Empty(), frozenset({"nope"}))}, "S")
    assert kinds(g) == [(IssueKind.UNDECLARED_LABEL, "S")]


def test_missing_start_rule():
    g = Grammar({"S": A}, "T")
    assert kinds(g) == [(IssueKind.UNKNOWN_NONTERMINAL, "T")]


def test_empty_grammar():
    assert kinds(Grammar({}, "S")) == [(IssueKind.EMPTY_GRAMMAR, "S")]


def test_issue_text():
    issue = validate(Grammar({"A": Star(Empty())}, "A"))[0]
    assert str(issue) == "nullable-star-body in rule A: repetition body can succeed without consuming input"


def test_validate_is_deterministic(grammar):
    g = grammar("A <- A 'a' / B*", "B <- e")
    assert validate(g) == validate(g)


def test_nested_star_is_rejected_before_and_after_desugaring(grammar):
    g = grammar("S <- ('a'*)*")
    assert kinds(g) == [(IssueKind.NULLABLE_STAR_BODY, "S")]
    assert validate(desugar_star(g)) != []


@pytest.mark.parametrize("expr, expected", [
    (Empty(), True),
    (A, False),
    (Star(A), True),
    (Not(A), True),
    (Throw("x"), False),
    (AnySymbol(), False),
    (Choice(A, Empty()), True),
    (Sequence(Empty(), A), False),
])
def test_nullable_atoms(expr, expected):
    assert nullable(expr, Grammar({"S": A}, "S")) is expected


def test_nullable_rules_fixpoint(grammar):
    g = grammar("S <- A B", "A <- 'a' / B", "B <- 'b'*", "C <- 'c' C")
    assert nullable_rules(g) == {"S": True, "A": True, "B": True, "C": False}


@pytest.mark.parametrize("name", ["tiny.peg", "tiny-labeled.peg", "tiny-labeled-follow.peg", "llstar.peg",
                                  "read-repeat.peg"])
def test_shipped_grammars_are_well_formed(grammar_dir, name):
    from app.grammar import load_grammar
    assert validate(load_grammar(grammar_dir / name)) == []
