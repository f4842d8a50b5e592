from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from episturmian.core import FiniteWord
from episturmian.dbonacci import dbonacci_morphism
from episturmian.directive import (
    DirectiveError,
    DirectiveSequence,
    SequenceTag,
    classify,
    dbonacci_directive,
    parse_directive,
    prefix_chain,
    standard_prefix,
)
from episturmian.morphisms import apply, elementary


@st.composite
def directives(draw, max_d: int = 4):
    d = draw(st.integers(2, max_d))
    pre = draw(st.lists(st.integers(0, d - 1), max_size=4))
    per = draw(st.lists(st.integers(0, d - 1), min_size=1, max_size=5))
    return DirectiveSequence(d, tuple(pre), tuple(per))


@pytest.mark.parametrize(
    "text, d, pre, per",
    [(":0,1", 2, (), (0, 1)), ("1:0", 2, (1,), (0,)), (":0,1,2", 3, (), (0, 1, 2))],
)
def test_parse_examples(text, d, pre, per):
    delta = parse_directive(text, d)
    assert (delta.preperiod, delta.period) == (pre, per)
    assert parse_directive(str(delta), d) == delta


@pytest.mark.parametrize("text, d", [("0,1:", 2), ("0,1", 2), ("2:0", 2), ("a:0", 2), ("::0", 2), (":0", 1)])
def test_parse_errors(text, d):
    with pytest.raises(DirectiveError):
        parse_directive(text, d)


@pytest.mark.parametrize(
    "text, d, tag, dprime",
    [
        (":0,1", 2, SequenceTag.ARNOUX_RAUZY, None),
        ("0,1:1", 2, SequenceTag.PERIODIC, None),
        (":0,1", 3, SequenceTag.APERIODIC_NON_AR, 2),
    ],
)
def test_classify_examples(text, d, tag, dprime):
    c = classify(parse_directive(text, d))
    assert c.tag is tag
    assert c.effective_d == dprime


def test_fibonacci_prefix():
    assert str(standard_prefix(parse_directive(":0,1", 2), 13)) == "0,1,0,0,1,0,1,0,0,1,0,0,1"


def test_periodic_prefix():
    assert str(standard_prefix(parse_directive("0:1", 2), 6)) == "0,1,0,1,0,1"


def test_tribonacci_prefix_matches_iterated_morphism():
    phi = dbonacci_morphism(3)
    w = FiniteWord((0,), 3)
    for _ in range(3):
        w = apply(phi, w)
    assert str(w[:7]) == "0,1,0,2,0,1,0"
    assert standard_prefix(dbonacci_directive(3), 7) == w[:7]


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_dbonacci_prefix_is_fixed_point(d):
    u = standard_prefix(dbonacci_directive(d), 2000)
    assert apply(dbonacci_morphism(d), u)[:2000] == u


def test_empty_prefix():
    assert len(standard_prefix(parse_directive(":0,1", 2), 0)) == 0
    with pytest.raises(ValueError):
        standard_prefix(parse_directive(":0,1", 2), -1)


@given(directives(), st.integers(0, 300), st.integers(0, 300))
def test_prefix_consistency(delta, a, b):
    lo, hi = sorted((a, b))
    assert standard_prefix(delta, lo).is_prefix_of(standard_prefix(delta, hi))
    assert len(standard_prefix(delta, hi)) == hi


@given(directives())
def test_prefix_chain_nested(delta):
    if classify(delta).tag is SequenceTag.PERIODIC:
        return
    chain = prefix_chain(delta, 10)
    for a, b in zip(chain, chain[1:]):
        assert a.is_prefix_of(b)
    top = chain[-1][:400]
    assert top == standard_prefix(delta, len(top))


@given(directives())
def test_periodic_sequences_from_tail(delta):
    if classify(delta).tag is not SequenceTag.PERIODIC:
        return
    i = delta.period[0]
    w = FiniteWord((i,) * 100, delta.d)
    for j in reversed(delta.preperiod):
        w = apply(elementary(j, delta.d), w)[:100]
    assert standard_prefix(delta, 100) == w


def test_shift_and_prepend():
    delta = parse_directive("2:0,1", 3)
    assert delta.shifted(1) == parse_directive(":0,1", 3)
    assert delta.shifted(2) == parse_directive(":1,0", 3)
    assert delta.shifted(1).prepend(2) == delta
    assert parse_directive(":0,1", 2).embed(3) == parse_directive(":0,1", 3)


@pytest.mark.parametrize(
    "text, d, expected",
    [(":0,1,2", 3, True), (":2,0,1", 3, True), ("1:2,0,1", 3, True), ("1:0,1,2", 3, False), ("0:1,2,0", 3, True), (":0,1,2,0", 3, False)],
)
def test_dbonacci_detection(text, d, expected):
    assert parse_directive(text, d).is_dbonacci_type() is expected
