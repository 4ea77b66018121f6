"""Word-count integers D[alpha, beta], harmonic sums S^alpha(beta), and the
p-adic bracket values built from them.

``L(gamma) = [D^gamma_x (1/x) f]_0 = sum_{i>=1} B_i D[gamma, i-1]`` and
``F(gamma) = (-1)^gamma [D^gamma_x x^(p-1) f]_0`` are the only transcendental
inputs of the Frobenius first row.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .dwork import (
    TruncationPolicy,
    bracket_tail_bound,
    dwork_coefficients,
    series_sum,
)
from .padic import Context, PadicScalar, agree_to, digits_agreed, from_rational

__all__ = [
    "DTable",
    "HarmonicTable",
    "BracketValue",
    "ReductionIdentityViolated",
    "d_value",
    "d_value_by_words",
    "s_value",
    "bracket_L",
    "bracket_F",
    "delta_s",
    "reduced_F",
    "harmonic_bridge_holds",
]


class ReductionIdentityViolated(ArithmeticError):
    pass


class DTable:
    """Memoized D[alpha, beta] with ``D[a, b] = b D[a, b-1] + D[a-1, b-1]``."""

    def __init__(self):
        self._rows: list[list[int]] = []
        self._lock = threading.Lock()

    def _grow(self, alpha: int, beta: int) -> None:
        with self._lock:
            rows = self._rows
            while len(rows) <= alpha:
                a = len(rows)
                rows.append([factorial(0) if a == 0 else 0])
            for a, row in enumerate(rows):
                above = rows[a - 1] if a else None
                for b in range(len(row), beta + 1):
                    if a == 0:
                        row.append(b * row[b - 1])
                    else:
                        row.append(b * row[b - 1] + above[b - 1])

    def __call__(self, alpha: int, beta: int) -> int:
        if alpha < 0 or beta < 0:
            return 0
        if alpha >= len(self._rows) or beta >= len(self._rows[alpha]):
            self._grow(max(alpha, len(self._rows) - 1), beta)
        return self._rows[alpha][beta]


class HarmonicTable:
    """Memoized S^alpha(beta): ``S^0 = 1``, ``S^a(b) = sum_{i<b} S^{a-1}(i)/i``, zero for ``b <= a``."""

    def __init__(self):
        # partial[a][b] = S^a(b) for b >= 0
        self._rows: list[list[Fraction]] = []

    def __call__(self, alpha: int, beta: int) -> Fraction:
        if alpha == 0:
            return Fraction(1)
        if beta <= alpha:
            return Fraction(0)
        while len(self._rows) < alpha:
            self._rows.append([Fraction(0)])
        for a in range(1, alpha + 1):
            row = self._rows[a - 1]
            while len(row) <= beta:
                i = len(row) - 1
                row.append(row[-1] + (self(a - 1, i) / i if i >= 1 else 0))
        return self._rows[alpha - 1][beta]


_D = DTable()
_S = HarmonicTable()


def d_value(alpha: int, beta: int) -> int:
    return _D(alpha, beta)


def s_value(alpha: int, beta: int) -> Fraction:
    return _S(alpha, beta)


def d_value_by_words(alpha: int, beta: int) -> int:
    """D[alpha, beta] by applying every word in ``d/dx`` and ``1/x`` to ``x^beta``.

    A word has length ``beta`` with ``alpha`` letters ``1/x``; each word
    lowers the degree by ``beta`` so the result is a constant.
    """
    if alpha < 0 or alpha > beta:
        return 0
    total = 0
    for places in combinations(range(beta), alpha):
        inverse = set(places)
        coeff, degree = 1, beta
        # the rightmost letter acts first
        for pos in reversed(range(beta)):
            if pos not in inverse:
                coeff *= degree
            degree -= 1
            if coeff == 0:
                break
        total += coeff
    return total


@dataclass(frozen=True)
class BracketValue:
    gamma: int
    value: PadicScalar
    n_max_used: int


@lru_cache(maxsize=None)
def bracket_L(gamma: int, ctx: Context, policy: TruncationPolicy | None = None) -> BracketValue:
    """``[D^gamma_x (1/x) f]_0 = sum_{i>=1} B_i D[gamma, i-1]``."""
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    policy = policy or TruncationPolicy.for_context(ctx)
    p = ctx.p
    table = dwork_coefficients(p, 2 * p)

    def term(i: int) -> Fraction:
        if i == 0:
            return Fraction(0)
        return table[i] * _D(gamma, i - 1)

    res = series_sum(term, policy, bracket_tail_bound(p, gamma, -1), ctx)
    return BracketValue(gamma, res.value, res.terms)


@lru_cache(maxsize=None)
def _bracket_F_direct(gamma: int, ctx: Context, policy: TruncationPolicy) -> BracketValue:
    p = ctx.p
    table = dwork_coefficients(p, 2 * p)
    sign = -1 if gamma % 2 else 1

    def term(s: int) -> Fraction:
        return sign * table[s] * _D(gamma, s + p - 1)

    res = series_sum(term, policy, bracket_tail_bound(p, gamma, p - 1), ctx)
    return BracketValue(gamma, res.value, res.terms)


def bracket_F(
    gamma: int,
    ctx: Context,
    policy: TruncationPolicy | None = None,
    check: bool = True,
) -> BracketValue:
    """``(-1)^gamma sum_{s>=0} B_s D[gamma, s+p-1]``, summed directly.

    With ``check`` the value is compared to what the reduction
    ``x^(p-1) f = f' - f`` predicts (``-1`` for gamma = 0, else
    ``(-1)^(gamma+1) L(gamma-1)``) and a mismatch in the reported digits
    raises :class:`ReductionIdentityViolated`.
    """
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    policy = policy or TruncationPolicy.for_context(ctx)
    direct = _bracket_F_direct(gamma, ctx, policy)
    if check:
        predicted = reduced_F(gamma, ctx, policy)
        if not agree_to(direct.value, predicted, ctx.digits):
            raise ReductionIdentityViolated(
                f"F({gamma}) agrees with its reduction to only "
                f"{digits_agreed(direct.value, predicted)} digits at p={ctx.p}"
            )
    return direct


def reduced_F(gamma: int, ctx: Context, policy: TruncationPolicy | None = None) -> PadicScalar:
    """F(gamma) as predicted by the reduction identities."""
    if gamma == 0:
        return from_rational(-1, ctx)
    value = bracket_L(gamma - 1, ctx, policy).value
    return value if gamma % 2 == 1 else -value


def delta_s(s: int, ctx: Context, policy: TruncationPolicy | None = None) -> PadicScalar:
    """``L(s-1) - L(0)^s / s!``; zero for s = 1, 2 and nonzero for s = 3."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s == 1:
        return from_rational(0, ctx)
    l0 = bracket_L(0, ctx, policy).value
    return bracket_L(s - 1, ctx, policy).value - l0**s * Fraction(1, factorial(s))


def harmonic_bridge_holds(alpha: int, beta: int) -> bool:
    """``D[alpha, beta-1] == (beta-1)! S^alpha(beta)``."""
    return Fraction(d_value(alpha, beta - 1)) == factorial(beta - 1) * s_value(alpha, beta)
