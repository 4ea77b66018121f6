from fractions import Fraction

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given

from conftest import PRIMES
from quintic_frobenius.lfunction import (
    InnerSumValuationTooLow,
    bernoulli_numbers,
    compare_delta3,
    generalized_binomial,
    interpolation_series,
    lp_value,
    von_staudt_denominator,
    zeta_p,
)
from quintic_frobenius import lfunction
from quintic_frobenius.padic import Context, agree_to, digits_agreed, from_rational


def test_small_bernoulli():
    b = bernoulli_numbers(12)
    assert (b[0], b[1], b[2]) == (1, Fraction(-1, 2), Fraction(1, 6))
    assert b[12] == Fraction(-691, 2730)
    assert von_staudt_denominator(12) == 2 * 3 * 5 * 7 * 13
    assert len(b) == 13
    with pytest.raises(ValueError):
        bernoulli_numbers(-1)


def test_bernoulli_against_sympy():
    b = bernoulli_numbers(120)
    for j in range(2, 121):
        ref = sympy.bernoulli(j)
        assert b[j] == Fraction(int(ref.p), int(ref.q))


@given(st.integers(1, 100))
def test_von_staudt_clausen(j):
    b = bernoulli_numbers(2 * j)[2 * j]
    assert b.denominator == von_staudt_denominator(2 * j)
    assert bernoulli_numbers(2 * j + 1)[2 * j + 1] == 0


@given(st.integers(0, 40))
def test_binomial_stream(j):
    assert generalized_binomial(-2, j) == (-1) ** j * (j + 1)


@given(st.integers(-30, 30), st.integers(0, 12))
def test_binomial_against_sympy(x, j):
    assert generalized_binomial(x, j) == int(sympy.binomial(x, j))


@pytest.mark.parametrize("p", [3, 5, 7, 13])
@pytest.mark.parametrize("n", [2, 4, 6, 10, 12])
def test_interpolation_at_negative_integers(p, n):
    # L_p(1-n, omega^n) = -(1 - p^(n-1)) Bern_n / n
    ctx = Context(p)
    s = 1 - n
    inner, _ = interpolation_series(s, ctx)
    value = inner * Fraction(1, p * (s - 1))
    bern = bernoulli_numbers(n)[n]
    expected = -(1 - Fraction(p) ** (n - 1)) * bern / n
    assert agree_to(value, from_rational(expected, ctx), 15)


@pytest.mark.parametrize("p, k", [(5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)])
def test_kummer_congruence_for_lp3(p, k):
    # s = 3 and s' = 3 - (p-1) p^k share the branch and are p^k-close
    ctx = Context(p)
    n = (p - 1) * p**k - 2
    bern = bernoulli_numbers(n)[n]
    neighbour = from_rational(-(1 - Fraction(p) ** (n - 1)) * bern / n, ctx)
    assert digits_agreed(lp_value(3, ctx).value, neighbour) >= k + 1


@pytest.mark.parametrize("s", [2, 1, 0, -3])
def test_s_must_be_odd_at_least_three(s):
    with pytest.raises(ValueError):
        lp_value(s, Context(7))


def test_pole_refused():
    with pytest.raises(ValueError):
        interpolation_series(1, Context(7))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_inner_sum_divisible_by_p(p):
    lv = lp_value(3, Context(p))
    assert not lv.trivial_character
    assert lv.inner_valuation >= 1
    assert lv.character_exponent == (-2) % (p - 1)


def test_trivial_character_at_three():
    lv = lp_value(3, Context(3))
    assert lv.trivial_character and lv.inner_valuation == 0


def test_inner_valuation_guard(monkeypatch):
    ctx = Context(7)
    monkeypatch.setattr(lfunction, "interpolation_series", lambda *a, **k: (from_rational(2, ctx), 1))
    with pytest.raises(InnerSumValuationTooLow):
        lp_value(3, ctx)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("s", [3, 5])
def test_doubling_truncation_is_stable(p, s):
    ctx = Context(p)
    lv = lp_value(s, ctx)
    wide = lp_value(s, ctx, extra_terms=lv.terms_used)
    assert wide.terms_used >= 2 * lv.terms_used
    assert agree_to(lv.value, wide.value, 15)


@pytest.mark.parametrize("p", PRIMES)
def test_zeta_ratio(p):
    ctx = Context(p)
    lv, z = lp_value(3, ctx), zeta_p(3, ctx)
    ratio = z.value / lv.value
    assert agree_to(ratio, from_rational(Fraction(p**3, p**3 - 1), ctx), 15)
    # the factor p^3/(p^3-1) has valuation 3
    assert z.value.valuation == lv.value.valuation + 3


@pytest.mark.parametrize("p", PRIMES)
def test_delta3_matches_lp_over_three(p):
    c = compare_delta3(Context(p))
    assert c.agree and c.digits_agreed >= 10
    assert (c.caveat is not None) == (p == 3)
