import pytest

from app.engine import match_ffl, match_labeled, match_plain
from app.exceptions import EngineLimitError, StepBudgetExceeded
from app.grammar import desugar_star
from app.models import FAILED, Consumed
from config import Config


def test_single_terminal(grammar):
    assert match_plain(grammar("S <- 'a'"), "a") == Consumed(1)


def test_ordered_choice_does_not_retry(grammar):
    assert match_plain(grammar("S <- ('a' / \"ab\") 'c'"), "abc") == FAILED


def test_greedy_repetition(grammar):
    g = grammar("S <- 'a'* 'a'")
    assert match_plain(g, "aaa") == FAILED
    assert match_plain(grammar("S <- 'a'*"), "aab") == Consumed(2)


def test_predicates_consume_nothing(grammar):
    assert match_plain(grammar("S <- &'a' ."), "a") == Consumed(1)
    assert match_plain(grammar("S <- !'a' ."), "a") == FAILED
    assert match_plain(grammar("S <- !."), "") == Consumed(0)


def test_literal_and_class(grammar):
    g = grammar('S <- "ab" [0-9]')
    assert match_plain(g, "ab7") == Consumed(3)
    assert match_plain(g, "ac7") == FAILED


def test_start_position(grammar):
    assert match_plain(grammar("S <- 'b'"), "ab", 1) == Consumed(2)
    with pytest.raises(ValueError):
        match_plain(grammar("S <- 'b'"), "ab", 3)


def test_text_input_is_utf8(grammar):
    assert match_plain(grammar('S <- "é"'), "é") == Consumed(2)


def test_labels_are_erased(grammar):
    g = grammar("label x", "S <- ^x /{x} 'a' / 'b'")
    assert match_plain(g, "b") == Consumed(1)


def test_factorial_stops_at_line_three(tiny, factorial):
    result = match_plain(tiny, factorial)
    assert isinstance(result, Consumed)
    assert factorial[result.end:].startswith(b"repeat")
    assert factorial[:result.end].count(b"\n") == 2


def test_valid_program_is_consumed(tiny, sample_dir):
    data = (sample_dir / "factorial-fixed.tiny").read_bytes()
    assert match_plain(tiny, data) == Consumed(len(data))


def test_step_budget(tiny, factorial):
    with pytest.raises(StepBudgetExceeded) as info:
        match_plain(tiny, factorial, step_budget=50)
    assert info.value.budget == 50


def test_long_inputs_do_not_exhaust_the_stack(grammar):
    g = desugar_star(grammar("S <- 'a'*"))
    data = "a" * 5000
    assert match_plain(g, data) == Consumed(5000)
    assert match_ffl(g, data)[0] == Consumed(5000)
    assert match_labeled(g, data)[0] == Consumed(5000)


def test_nesting_past_the_recursion_limit(grammar, monkeypatch):
    monkeypatch.setattr(Config, "RECURSION_LIMIT", 1000)
    g = desugar_star(grammar("S <- 'a'*"))
    with pytest.raises(EngineLimitError, match="nesting too deep"):
        match_plain(g, "a" * 20000)
