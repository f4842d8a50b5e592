from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from episturmian import dbonacci
from episturmian.core import identity, mat_mul, ones
from episturmian.directive import dbonacci_directive
from episturmian.exponent import s_values
from episturmian.morphisms import product_matrix

TABLE = {
    2: (1.618, 3.618),
    3: (1.839, 3.191),
    4: (1.928, 3.078),
    5: (1.966, 3.035),
    6: (1.984, 3.017),
    7: (1.992, 3.008),
}


def p(d: int, x: Fraction) -> Fraction:
    return x**d - sum(x**j for j in range(d))


@pytest.mark.parametrize("d", sorted(TABLE))
def test_table_values(d):
    k = dbonacci.constants(d, 128)
    t, e = TABLE[d]
    assert abs(float(k.t_lo) - t) < 5e-4
    assert abs(float(k.E_lo) - e) < 5e-4


@pytest.mark.parametrize("d", range(2, 8))
def test_root_enclosure(d):
    k = dbonacci.constants(d, 128)
    assert 2 - Fraction(2, 2**d) < k.t_lo < k.t_hi < 2 - Fraction(1, 2**d)
    assert k.t_hi - k.t_lo <= Fraction(1, 2**128)
    assert p(d, k.t_lo) < 0 < p(d, k.t_hi)
    assert all(abs(z) < 1 for z in k.roots[1:])
    assert all(r < mpmath.mpf(10) ** -20 for r in k.property2_residuals())
    assert k.E_lo <= 2 + 1 / (k.t_lo - 1) and 2 + 1 / (k.t_hi - 1) <= k.E_hi + Fraction(1, 10**30)


def test_higher_precision_narrows():
    a = dbonacci.constants(3, 128)
    b = dbonacci.constants(3, 512)
    assert a.t_lo <= b.t_lo < b.t_hi <= a.t_hi
    assert b.t_hi - b.t_lo <= Fraction(1, 2**512)


@pytest.mark.parametrize("d, bits", [(1, 128), (3, 32)])
def test_constants_validation(d, bits):
    with pytest.raises(ValueError):
        dbonacci.constants(d, bits)


@pytest.mark.parametrize(
    "d, expected",
    [(2, [2, 3, 5, 8, 13, 21]), (3, [3, 5, 9, 17, 31])],
)
def test_recurrence_examples(d, expected):
    assert dbonacci.s_recurrence_values(d, len(expected) - 1) == expected


def test_recurrence_initial_value():
    assert dbonacci.s_recurrence(4, 3) == 25


@pytest.mark.parametrize("d", range(2, 7))
def test_matrix_power_identity(d):
    m = dbonacci.dbonacci_matrix(d)
    power = identity(d)
    s = s_values(dbonacci_directive(d), 60)
    rec = dbonacci.s_recurrence_values(d, 60)
    for n in range(61):
        one = ones(d)
        assert sum(sum(r[j] * one[j] for j in range(d)) for r in power) == s[n] == rec[n]
        if n <= 12:
            assert sum(map(sum, product_matrix(list(range(d)) * (n // d) + list(range(n % d)), d))) == s[n]
        power = mat_mul(power, m)


@pytest.mark.parametrize("d, n, tol", [(2, 10, 1e-9), (3, 0, 1e-9), (6, 40, 1e-6)])
def test_explicit_examples(d, n, tol):
    value, bound = dbonacci.explicit_eval(d, n, 128)
    assert abs(value - dbonacci.s_recurrence(d, n)) < tol
    assert bound < tol


@pytest.mark.parametrize("d", range(2, 7))
def test_explicit_formula_range(d):
    s = dbonacci.s_recurrence_values(d, 50)
    for n in range(51):
        value, bound = dbonacci.explicit_eval(d, n, 128)
        assert abs(value - s[n]) <= bound


def test_explicit_precision_shortfall():
    with pytest.raises(dbonacci.PrecisionError):
        dbonacci.explicit_eval(2, 400, 64)


@pytest.mark.parametrize("d, nmax", [(2, 10**4), (7, 10**3)])
def test_inequality_passes(d, nmax):
    cert = dbonacci.verify_inequality(d, nmax)
    assert cert.passed and cert.first_violation is None


@pytest.mark.parametrize("d", [2, 3, 5])
def test_perturbed_root_fails_early(d):
    k = dbonacci.constants(d)
    shift = Fraction(1, 10)
    cert = dbonacci.verify_inequality(d, 100, t_enclosure=(k.t_lo + shift, k.t_hi + shift))
    assert not cert.passed
    assert cert.first_violation <= 10


def test_straddle_is_indeterminate_with_fixed_enclosure():
    with pytest.raises(dbonacci.IndeterminateError):
        dbonacci.verify_inequality(2, 10, t_enclosure=(Fraction(1), Fraction(2)))


def test_threshold_table_bounds():
    rows = dbonacci.threshold_table(7)
    assert [r.d for r in rows] == list(range(2, 8))
    row4 = rows[2]
    assert Fraction(3) + Fraction(1, 15) < row4.E_lo < row4.E_hi < Fraction(3) + Fraction(1, 7)
    assert abs(float(row4.E_lo) - 3.078) < 5e-4
    assert all(a.E_lo > b.E_hi for a, b in zip(rows, rows[1:]))


def test_threshold_table_validation():
    with pytest.raises(ValueError):
        dbonacci.threshold_table(1)


def test_residual_diagnostic_is_finite():
    r = dbonacci.residual_diagnostic(2, 10, 233)
    # for d = 2 the only other root contributes c_2 t_2^10
    k = dbonacci.constants(2)
    with mpmath.workprec(160):
        assert abs(r - abs(k.c[1] * k.roots[1] ** 10)) < mpmath.mpf(10) ** -30
