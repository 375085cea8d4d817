import pytest

from app.engine import match_labeled, match_plain
from app.exceptions import TransformError
from app.grammar import (
    EPSN, ERROR, FourValue, Outcome, classify_outcome, desugar_star, expand_nofail, expand_try,
    four_values, load_grammar, parse_grammar, validate,
)
from app.models import (
    FAIL, Choice, Consumed, Empty, Grammar, NonTerminal, Not, Raised, Sequence, Star, Terminal,
    Throw, walk,
)

OK, EPS, FL, ERR = Outcome.OK, Outcome.EPSN, Outcome.FAIL, Outcome.ERROR


def t(ch):
    return Terminal(ord(ch))


# Atoms realising each outcome, with the input each needs.
FIRST = {
    EPS: (Empty(), ""),
    OK: (t("a"), "a"),
    FL: (t("b"), ""),
    ERR: (Sequence(t("c"), t("d")), "cz"),
}
SECOND = {
    EPS: (Empty(), ""),
    OK: (t("e"), "e"),
    FL: (t("f"), "z"),
    ERR: (Sequence(t("g"), t("h")), "gz"),
}

# (p1, p2) -> (p1 p2, p1 / p2); OK carries its end offset
TABLE = [
    (ERR, ERR, ERR, ERR),
    (ERR, FL, ERR, ERR),
    (ERR, EPS, ERR, ERR),
    (ERR, OK, ERR, ERR),
    (FL, ERR, FL, ERR),
    (FL, FL, FL, FL),
    (FL, EPS, FL, EPS),
    (FL, OK, FL, (OK, 1)),
    (EPS, ERR, ERR, ERR),
    (EPS, FL, FL, EPS),
    (EPS, EPS, EPS, EPS),
    (EPS, OK, (OK, 1), (OK, 1)),
    (OK, ERR, ERR, (OK, 1)),
    (OK, FL, ERR, (OK, 1)),
    (OK, EPS, (OK, 1), (OK, 1)),
    (OK, OK, (OK, 2), (OK, 1)),
]


def expected_value(cell):
    if isinstance(cell, tuple):
        return FourValue(cell[0], cell[1])
    return FourValue(cell)


def evaluate(expr, text):
    translated = four_values(Grammar({"S": expr}, "S"))
    outcome, _ = match_labeled(translated, text)
    return classify_outcome(outcome, 0)


@pytest.mark.parametrize("p1, p2, seq, alt", TABLE)
def test_four_values_table(p1, p2, seq, alt):
    e1, in1 = FIRST[p1]
    e2, in2 = SECOND[p2]
    assert evaluate(Sequence(e1, e2), in1 + in2) == expected_value(seq)
    assert evaluate(Choice(e1, e2), in1 + in2) == expected_value(alt)


@pytest.mark.parametrize("text", ["", "a", "b", "ab"])
def test_translated_terminal_is_ok_or_fail(text):
    assert evaluate(t("a"), text).kind in (OK, FL)


def test_mismatch_after_progress_is_an_error():
    assert evaluate(Sequence(t("a"), t("b")), "ac") == FourValue(ERR)
    assert evaluate(Choice(t("a"), t("b")), "b") == FourValue(OK, 1)
    assert evaluate(Choice(Empty(), t("b")), "z") == FourValue(EPS)


def test_try_restores_backtracking():
    without = parse_grammar('S <- "repeat" / "read"')
    with_try = parse_grammar('S <- try("repeat") / "read"')
    assert classify_outcome(match_labeled(four_values(without), "read x;")[0], 0) == FourValue(ERR)
    assert classify_outcome(match_labeled(four_values(with_try), "read x;")[0], 0) == FourValue(OK, 4)


def test_try_turns_error_into_fail():
    g = parse_grammar('S <- try("repeat")')
    assert classify_outcome(match_labeled(four_values(g), "read")[0], 0) == FourValue(FL)
    assert classify_outcome(match_labeled(four_values(g), "repeat")[0], 0) == FourValue(OK, 6)


def test_nofail_turns_fail_into_error():
    g = parse_grammar("S <- 'x' nofail(';')")
    assert match_labeled(g, "x.")[0] == Raised(ERROR, 1)
    assert match_labeled(g, "x;")[0] == Consumed(2)
    assert expand_nofail(t(";")) == Choice(t(";"), Throw(ERROR), frozenset({FAIL}))
    assert expand_try(t(";")) == Choice(t(";"), Throw(FAIL), frozenset({ERROR}))


@pytest.mark.parametrize("text", ["a", "b", ""])
def test_nested_nofail_behaves_like_nofail(text):
    once = Grammar({"S": expand_nofail(t("a"))}, "S", labels=(FAIL, ERROR))
    twice = Grammar({"S": expand_nofail(expand_nofail(t("a")))}, "S", labels=(FAIL, ERROR))
    assert match_labeled(once, text)[0] == match_labeled(twice, text)[0]


def test_rejects_predicates_stars_and_labels():
    for body in (Not(t("a")), Star(t("a")), Throw("x"), Choice(t("a"), t("b"), frozenset({"x"}))):
        with pytest.raises(TransformError):
            four_values(Grammar({"S": body}, "S", labels=(FAIL, "x")))


def test_epsn_must_be_fresh():
    with pytest.raises(TransformError):
        four_values(Grammar({"S": t("a")}, "S", labels=(FAIL, EPSN)))


def test_translated_labels():
    g = four_values(Grammar({"S": t("a")}, "S"))
    assert set(g.labels) == {FAIL, EPSN, ERROR}


def test_classify_outcome():
    assert classify_outcome(Consumed(3), 0) == FourValue(OK, 3)
    assert classify_outcome(Raised(EPSN, 0), 0) == FourValue(EPS)
    assert classify_outcome(Raised(ERROR, 2), 0) == FourValue(ERR)
    assert classify_outcome(Raised(FAIL, 2), 0) == FourValue(FL)
    with pytest.raises(TransformError):
        classify_outcome(Consumed(0), 0)
    with pytest.raises(TransformError):
        classify_outcome(Raised("sc", 0), 0)


def test_desugar_star_adds_a_fresh_rule(grammar):
    g = desugar_star(grammar("S <- 'a'*", "S_star1 <- 'b'"))
    assert g.rules["S"] == NonTerminal("S_star2")
    assert g.rules["S_star2"] == Choice(Sequence(t("a"), NonTerminal("S_star2")), Empty())
    assert not any(isinstance(node, Star) for rule in g.rules.values() for node in walk(rule))


def test_desugar_star_leaves_star_free_grammars_alone(grammar):
    g = grammar("S <- 'a' / 'b'")
    assert desugar_star(g) is g


def test_desugared_tiny_matches_the_same(tiny, factorial):
    desugared = desugar_star(tiny)
    assert validate(desugared) == []
    assert match_labeled(desugared, factorial)[0] == match_labeled(tiny, factorial)[0]


@pytest.mark.parametrize("text", ["ab", "ba", "a", "c", ""])
def test_ll1_verdict_matches_plain(grammar, text):
    g = grammar("S <- A 'b' / 'b' A", "A <- 'a' / e")
    plain = match_plain(g, text)
    value = classify_outcome(match_labeled(four_values(g), text)[0], 0)
    assert (value.kind in (OK, EPS)) == isinstance(plain, Consumed)


def test_translated_grammar_handles_long_words(grammar_dir):
    g = four_values(desugar_star(load_grammar(grammar_dir / "read-repeat.peg")))
    text = "read " + "x" * 400 + ";"
    assert match_labeled(g, text)[0] == Consumed(len(text))
