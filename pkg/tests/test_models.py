import pytest

from app.models import (
    FAIL, NO_FAILURE, Choice, ClassItem, Empty, FailureRecord, Grammar, Literal,
    LiteralItem, NonTerminal, NonTerminalItem, PredicateItem, Sequence, Star, Terminal,
    TerminalItem, sequence_of, walk,
)


def test_terminal_symbol_range():
    with pytest.raises(ValueError):
        Terminal(256)
    assert Terminal(0).symbol == 0


def test_literal_must_be_non_empty():
    with pytest.raises(ValueError):
        Literal(b"")


def test_default_choice_catches_fail():
    choice = Choice(Terminal(ord("a")), Terminal(ord("b")))
    assert choice.catch == frozenset({FAIL})
    assert choice == Choice(Terminal(ord("a")), Terminal(ord("b")), frozenset({FAIL}))
    with pytest.raises(ValueError):
        Choice(Empty(), Empty(), frozenset())


def test_grammar_always_declares_fail():
    grammar = Grammar({"S": Empty()}, "S", labels=("err",))
    assert grammar.labels == (FAIL, "err")
    assert grammar.has_label(FAIL)


def test_walk_is_preorder_left_to_right():
    a, b, c = (Terminal(ord(ch)) for ch in "abc")
    expr = Sequence(Choice(a, b), Star(c))
    assert list(walk(expr)) == [expr, Choice(a, b), a, b, Star(c), c]


def test_sequence_of_nests_left():
    a, b, c = (Terminal(ord(ch)) for ch in "abc")
    assert sequence_of() == Empty()
    assert sequence_of(a) == a
    assert sequence_of(a, b, c) == Sequence(Sequence(a, b), c)


def test_failure_record_position_and_items_go_together():
    with pytest.raises(ValueError):
        FailureRecord(3, ())
    with pytest.raises(ValueError):
        FailureRecord(None, (TerminalItem(97),))
    assert NO_FAILURE.is_empty


def test_failure_record_items_are_unique():
    with pytest.raises(ValueError):
        FailureRecord(1, (TerminalItem(97), TerminalItem(97)))


@pytest.mark.parametrize("item, shown", [
    (TerminalItem(ord(";")), "';'"),
    (TerminalItem(ord("\n")), "'\\n'"),
    (LiteralItem(b":="), "':='"),
    (ClassItem("[0-9]"), "[0-9]"),
    (NonTerminalItem("Factor"), "Factor"),
    (PredicateItem("!."), "!."),
])
def test_expected_item_display(item, shown):
    assert item.display() == shown


def test_nonterminal_equality_is_structural():
    assert NonTerminal("A") == NonTerminal("A")
    assert hash(Sequence(NonTerminal("A"), Empty())) == hash(Sequence(NonTerminal("A"), Empty()))
