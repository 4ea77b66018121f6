import math
from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from quintic_frobenius import dwork
from quintic_frobenius.brackets import d_value
from quintic_frobenius.dwork import (
    DworkBoundViolation,
    DworkCoefficients,
    TruncationCapExceeded,
    TruncationPolicy,
    bracket_tail_bound,
    check_dwork_bound,
    coefficient_floor,
    dwork_coefficients,
    minus_one_identity,
    read_cache,
    series_sum,
    valuation_floor,
    write_cache,
)
from quintic_frobenius.padic import Context, agree_to, from_rational, vp_rational


def exp_product_oracle(p, n_max):
    """Coefficients of exp(x) * exp(x^p / p) by direct Cauchy product."""
    e1 = [Fraction(1, math.factorial(k)) for k in range(n_max + 1)]
    e2 = [Fraction(0)] * (n_max + 1)
    for k in range(n_max // p + 1):
        e2[k * p] = Fraction(1, p**k * math.factorial(k))
    return [sum(e1[n - m] * e2[m] for m in range(n + 1)) for n in range(n_max + 1)]


def test_first_coefficients_at_three():
    assert dwork_coefficients(3, 3).prefix(3) == [1, 1, Fraction(1, 2), Fraction(1, 2)]


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_recurrence_matches_exponential_product(p):
    assert DworkCoefficients(p).prefix(80) == exp_product_oracle(p, 80)


@pytest.mark.parametrize("p", [3, 7, 13])
def test_coefficient_floor_holds(p):
    check_dwork_bound(dwork_coefficients(p, 400), 400)


def test_pi_scaled_bound_and_its_failure_for_raw_coefficients():
    # v(pi^n B_n) >= n(p-1)/p^2 holds, but v(B_n) itself drops far below it
    table = dwork_coefficients(3, 150)
    for n in range(151):
        assert vp_rational(table[n], 3) + Fraction(n, 2) >= valuation_floor(n, 3)
    assert vp_rational(table[150], 3) == -36
    assert vp_rational(table[150], 3) < valuation_floor(150, 3) - 2


def test_bound_violation_is_reported():
    table = DworkCoefficients(3, [Fraction(1), Fraction(1, 3**5)])
    with pytest.raises(DworkBoundViolation):
        check_dwork_bound(table, 1)


@pytest.mark.parametrize("p", [3, 7])
@pytest.mark.parametrize("gamma", [0, 1, 2, 3])
@pytest.mark.parametrize("offset_kind", ["L", "F"])
def test_tail_bound_is_a_true_lower_bound(p, gamma, offset_kind):
    offset = -1 if offset_kind == "L" else p - 1
    bound = bracket_tail_bound(p, gamma, offset)
    table = dwork_coefficients(p, 700)
    vals = []
    for n in range(max(0, -offset), 700):
        vals.append((n, vp_rational(table[n] * d_value(gamma, n + offset), p)))
    # suffix minima over the computed range
    suffix = math.inf
    for n, v in reversed(vals):
        suffix = min(suffix, v)
        if n < 500:
            assert bound(n) <= suffix, (n, bound(n), suffix)


@pytest.mark.parametrize("p", [3, 7, 13])
def test_minus_one_identity(p):
    ctx = Context(p)
    res = minus_one_identity(ctx)
    assert agree_to(res.value, from_rational(-1, ctx), 15)


@given(st.sampled_from([3, 5, 7]), st.integers(min_value=1, max_value=20))
def test_series_sum_geometric(p, digits):
    ctx = Context(p, digits, 3)
    res = series_sum(lambda n: Fraction(p) ** n, TruncationPolicy.for_context(ctx), lambda n: n, ctx)
    assert agree_to(res.value, from_rational(Fraction(1, 1 - p), ctx), digits)


def test_series_sum_respects_hard_cap():
    ctx = Context(7)
    policy = TruncationPolicy(ctx.carried, hard_cap=40)
    with pytest.raises(TruncationCapExceeded):
        series_sum(lambda n: Fraction(1), policy, lambda n: -math.inf, ctx)


def test_truncation_policy_validation():
    with pytest.raises(ValueError):
        TruncationPolicy(10, stability_window=0)


def test_cache_roundtrip(tmp_path, monkeypatch):
    coeffs = DworkCoefficients(5).prefix(30)
    path = tmp_path / "b.txt"
    write_cache(path, coeffs)
    assert read_cache(path) == coeffs

    monkeypatch.setenv(dwork.CACHE_ENV, str(tmp_path / "cache"))
    monkeypatch.setattr(dwork, "_TABLES", {})
    dwork_coefficients(11, 25)
    cached = tmp_path / "cache" / "dwork_p11.txt"
    assert read_cache(cached) == exp_product_oracle(11, 25)
    # a fresh process-level table is seeded from the file
    monkeypatch.setattr(dwork, "_TABLES", {})
    assert len(dwork_coefficients(11, 3)) == 26


def test_corrupt_cache_is_ignored(tmp_path, monkeypatch):
    (tmp_path / "dwork_p7.txt").write_text("3\n0 1/1\n5 1/1\n")
    monkeypatch.setenv(dwork.CACHE_ENV, str(tmp_path))
    monkeypatch.setattr(dwork, "_TABLES", {})
    assert dwork_coefficients(7, 10).prefix(10) == exp_product_oracle(7, 10)
