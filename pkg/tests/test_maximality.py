from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from episturmian import dbonacci
from episturmian.core import mat_mul, ones
from episturmian.maximality import (
    BudgetExceeded,
    canonicalize,
    column_dominance,
    enumerate_max,
    random_positive_vector,
    s_value,
    swap_gap,
    window_distinct,
)
from episturmian.morphisms import elementary_matrix, product_matrix


def brute_force(d: int, n: int) -> tuple[int, list[tuple[int, ...]]]:
    """Every word, full matrix products."""
    best, arg = -1, []
    for w in itertools.product(range(d), repeat=n):
        v = sum(map(sum, product_matrix(w, d)))
        if v > best:
            best, arg = v, [w]
        elif v == best:
            arg.append(w)
    return best, arg


def test_d2_n3():
    res = enumerate_max(2, 3)
    assert res.max_value == 8
    assert res.argmax == ((0, 1, 0),)
    assert res.expanded_argmax() == [(0, 1, 0), (1, 0, 1)]
    assert brute_force(2, 3) == (8, [(0, 1, 0), (1, 0, 1)])


def test_d3_n2():
    res = enumerate_max(3, 2)
    best, arg = brute_force(3, 2)
    assert res.max_value == best == 9
    assert sorted(res.expanded_argmax()) == sorted(arg) == [w for w in itertools.product(range(3), repeat=2) if w[0] != w[1]]


@pytest.mark.parametrize("d", range(2, 6))
def test_n1(d):
    res = enumerate_max(d, 1)
    assert res.max_value == 2 * d - 1
    assert res.expanded_argmax() == [(i,) for i in range(d)]


@pytest.mark.parametrize("d, n", [(2, 6), (3, 5), (4, 4)])
def test_matches_brute_force(d, n):
    res = enumerate_max(d, n)
    best, arg = brute_force(d, n)
    assert res.max_value == best
    assert res.expanded_argmax() == sorted(arg)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_dbonacci_is_maximal(d):
    s = dbonacci.s_recurrence_values(d, 10)
    for n in range(11):
        res = enumerate_max(d, n)
        assert res.max_value == s[n]
        assert all(window_distinct(w, d) for w in res.argmax)


def test_parallel_search_is_deterministic():
    serial = enumerate_max(3, 9)
    assert enumerate_max(3, 9, workers=2) == serial


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_max(3, 10, budget=1000)


@pytest.mark.parametrize("d, n", [(1, 3), (2, -1)])
def test_validation(d, n):
    with pytest.raises(ValueError):
        enumerate_max(d, n)


@pytest.mark.parametrize(
    "w, d, expected",
    [((0, 1, 2, 0, 1, 2), 3, True), ((0, 1, 0), 3, False), ((0, 1, 0), 2, True), ((), 3, True), ((0, 0), 3, False)],
)
def test_window_distinct(w, d, expected):
    assert window_distinct(w, d) is expected


@pytest.mark.parametrize("w, expected", [((1, 0, 1), (0, 1, 0)), ((2, 0, 2), (0, 1, 0)), ((0, 1, 2), (0, 1, 2))])
def test_canonicalize(w, expected):
    assert canonicalize(w) == expected


def test_canonical_is_least_relabelling():
    w = (2, 0, 2)
    assert canonicalize(w) == min(tuple(p[a] for a in w) for p in itertools.permutations(range(3)))


@given(st.integers(2, 6).flatmap(lambda d: st.tuples(
    st.just(d), st.lists(st.integers(0, d - 1), max_size=25), st.permutations(range(d)))))
def test_value_invariant_under_relabelling(data):
    d, w, perm = data
    v = s_value(w, d)
    assert v == sum(map(sum, product_matrix(w, d)))
    assert s_value([perm[a] for a in w], d) == v
    assert s_value(canonicalize(w), d) == v


@pytest.mark.parametrize("d", range(2, 7))
def test_column_dominance(d):
    for k in range(1, d):
        assert column_dominance(d, k)


def test_column_dominance_by_hand():
    a = mat_mul(elementary_matrix(0, 3), elementary_matrix(1, 3))
    # M_0 M_1 over three letters: column 0 is (2,1,0), column 2 is (2,1,1)
    assert [a[r][0] for r in range(3)] == [2, 1, 0]
    assert [a[r][2] for r in range(3)] == [2, 1, 1]


@pytest.mark.parametrize("d", range(2, 7))
def test_swap_improves(d):
    rng = random.Random(d)
    for k in range(1, d):
        for _ in range(100):
            assert swap_gap(d, k, random_positive_vector(d, rng), random_positive_vector(d, rng)) > 0


def test_residual_diagnostic_reported():
    values = [dbonacci.residual_diagnostic(2, n, dbonacci.s_recurrence(2, n)) for n in range(2, 11)]
    assert all(a > b for a, b in zip(values, values[1:]))
