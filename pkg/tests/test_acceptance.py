"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed even
when output capture is on.
"""
import contextlib
import json
import time
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from quintic_frobenius.brackets import bracket_F, delta_s, reduced_F
from quintic_frobenius.cli import run
from quintic_frobenius.cohomology import (
    MultiIndex,
    c_closed,
    c_recursive,
    first_row,
    first_row_bruteforce,
    frobenius_matrix,
    picard_fuchs_solve,
)
from quintic_frobenius.dwork import minus_one_identity
from quintic_frobenius.lfunction import compare_delta3
from quintic_frobenius.padic import Context, agree_to, from_rational, is_zero_to

DIGITS = 15
CONJECTURE_DIGITS = 10
BRUTEFORCE_DIGITS = 5


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def gate(label: str, budget: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] {label} ({elapsed:.2f}s)")

    return gate


def test_criterion_01_picard_fuchs(criterion):
    with criterion("1 picard-fuchs coefficients = (-10, -35, -50, -24)", 1):
        assert picard_fuchs_solve() == (-10, -35, -50, -24)


def test_criterion_02_minus_one_identity(criterion):
    with criterion("2 sum B_s (s+p-1)! = -1 to 15 digits, p = 3, 7, 13", 15):
        for p in (3, 7, 13):
            ctx = Context(p, DIGITS)
            start = time.perf_counter()
            res = minus_one_identity(ctx)
            assert time.perf_counter() - start < 5
            assert agree_to(res.value, from_rational(-1, ctx), DIGITS)


def test_criterion_03_F_reduction(criterion):
    with criterion("3 F(gamma) = (-1)^(gamma+1) L(gamma-1) to 15 digits, gamma = 1..3, p = 3, 7", 10):
        for p in (3, 7):
            ctx = Context(p, DIGITS)
            for g in (1, 2, 3):
                direct = bracket_F(g, ctx, check=False).value
                assert agree_to(direct, reduced_F(g, ctx), DIGITS)


def test_criterion_04_quadratic_relation(criterion):
    with criterion("4 Delta_2 = 0 to 15 digits, p = 3, 5, 7, 11, 13", 30):
        for p in (3, 5, 7, 11, 13):
            assert is_zero_to(delta_s(2, Context(p, DIGITS)), DIGITS)


def test_criterion_05_nonvanishing(criterion):
    with criterion("5 v(Delta_3) < 15, p = 3, 5, 7, 11, 13", 60):
        for p in (3, 5, 7, 11, 13):
            d3 = delta_s(3, Context(p, DIGITS))
            assert not d3.is_zero and d3.valuation < DIGITS


def test_criterion_06_c_oracles(criterion):
    with criterion("6 c_recursive = c_closed, alpha <= 3, indices <= 6, s <= 10; vanishing", 30):
        for alpha in range(4):
            for idx in combinations_with_replacement(range(6, -1, -1), 5):
                for s in range(11):
                    mi = MultiIndex(idx, s)
                    c = c_recursive(alpha, mi)
                    assert c == c_closed(alpha, mi), (alpha, idx, s)
                    if alpha + mi.sharp > 3:
                        assert c == 0


def test_criterion_07_first_row(criterion):
    with criterion("7 R3 = -1, R2 = R1 = 0, R0 = (24/25) Delta_3 to 15 digits", 30 * 4):
        for p in (3, 7, 11, 13):
            ctx = Context(p, DIGITS)
            start = time.perf_counter()
            row = first_row(ctx, check=False)
            assert agree_to(row[3], from_rational(-1, ctx), DIGITS)
            assert is_zero_to(row[2], DIGITS) and is_zero_to(row[1], DIGITS)
            assert agree_to(row[0], delta_s(3, ctx) * Fraction(24, 25), DIGITS)
            assert time.perf_counter() - start < 30


def test_criterion_08_bruteforce_row(criterion):
    with criterion("8 six-fold oracle agrees with the first row to >= 5 certified digits at p = 3", 300):
        ctx = Context(3, DIGITS)
        bf = first_row_bruteforce(ctx, 50, digit_target=BRUTEFORCE_DIGITS)
        assert bf.certified_digits >= BRUTEFORCE_DIGITS
        row = first_row(ctx)
        for a in range(4):
            assert is_zero_to(row[a] - bf.values[a], bf.certified_digits)


def test_criterion_09_matrix_structure(criterion):
    with criterion("9 diag (p^3, p^2, p, 1), one off-diagonal p^3 (24/25) Delta_3, symplectic, delta-equivariant", 60 * 4):
        for p in (3, 7, 11, 13):
            ctx = Context(p, DIGITS)
            start = time.perf_counter()
            m = frobenius_matrix(ctx)
            for i in range(4):
                assert agree_to(m[i, i], from_rational(p ** (3 - i), ctx), DIGITS)
            assert m.nonzero_off_diagonal() == [(0, 3)]
            assert agree_to(m[0, 3], m.delta3 * Fraction(24 * p**3, 25), DIGITS)
            # defect entries scale like p^3 G, so 15 digits means divisibility by p^18
            assert all(is_zero_to(x, DIGITS + 3) for r in m.symplectic_defect() for x in r)
            assert all(is_zero_to(x, DIGITS) for r in m.delta_defect() for x in r)
            assert time.perf_counter() - start < 60


def test_criterion_10_conjecture_odd_primes(criterion):
    with criterion("10 Delta_3 = L_p(3, omega^-2)/3 to >= 10 digits, p = 5, 7, 11, 13", 120):
        for p in (5, 7, 11, 13):
            c = compare_delta3(Context(p, DIGITS))
            assert c.agree and c.digits_agreed >= CONJECTURE_DIGITS, (p, c.digits_agreed)


def test_criterion_10_conjecture_p3(criterion):
    with criterion("10 (p = 3, trivial character caveat) Delta_3 = L_p(3, omega^-2)/3 to >= 10 digits", 120):
        c = compare_delta3(Context(3, DIGITS))
        assert c.caveat is not None
        assert c.agree and c.digits_agreed >= CONJECTURE_DIGITS


def test_criterion_11_determinism(criterion):
    with criterion("11 verify --suite all is byte-identical across runs", 120):
        argv = ["verify", "--prime", "3", "--digits", "15", "--suite", "all", "--format", "json"]
        code_a, a = run(argv)
        code_b, b = run(argv)
        assert code_a == code_b == 0
        assert a.encode() == b.encode()
        assert json.loads(a)["ok"]
