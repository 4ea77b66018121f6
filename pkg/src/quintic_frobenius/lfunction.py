"""Kubota-Leopoldt values ``L_p(s, omega^(1-s))`` at odd ``s >= 3`` and the
comparison of ``Delta_3`` with ``L_p(3, omega^-2) / 3``.

For this twist the Teichmuller factors cancel (``omega(a)^(1-s) <a>^(1-s) =
a^(1-s)``) and the interpolation formula with conductor ``p`` reads::

    L_p(s) = 1/(p (s-1)) sum_{a=1}^{p-1} a^(1-s) sum_j C(1-s, j) (p/a)^j Bern_j

so only exact Bernoulli numbers are needed.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .brackets import delta_s
from .dwork import TruncationPolicy, series_sum
from .padic import (
    INF,
    Context,
    PadicScalar,
    agree_to,
    digits_agreed,
    vp,
)

__all__ = [
    "BernoulliTable",
    "LValue",
    "Delta3Comparison",
    "InnerSumValuationTooLow",
    "bernoulli_numbers",
    "von_staudt_denominator",
    "generalized_binomial",
    "interpolation_series",
    "lp_value",
    "zeta_p",
    "compare_delta3",
]

AGREEMENT_DIGITS = 10


class InnerSumValuationTooLow(ArithmeticError):
    pass


@dataclass(frozen=True)
class BernoulliTable:
    values: tuple[Fraction, ...]

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)


_BERN: list[Fraction] = [Fraction(1)]
_BERN_LOCK = threading.Lock()


def bernoulli_numbers(j_max: int) -> BernoulliTable:
    """Bern_0..Bern_{j_max} from ``sum_{k=0}^{m} C(m+1, k) Bern_k = 0`` (Bern_1 = -1/2)."""
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    with _BERN_LOCK:
        for m in range(len(_BERN), j_max + 1):
            if m >= 3 and m % 2:
                _BERN.append(Fraction(0))
                continue
            acc = sum(comb(m + 1, k) * _BERN[k] for k in range(m))
            _BERN.append(-acc / (m + 1))
        return BernoulliTable(tuple(_BERN[: j_max + 1]))


def von_staudt_denominator(j: int) -> int:
    """Product of the primes q with ``(q-1) | j``; the denominator of Bern_j for even j > 0."""
    out = 1
    for q in range(2, j + 2):
        if j % (q - 1) == 0 and all(q % d for d in range(2, int(q**0.5) + 1)):
            out *= q
    return out


def generalized_binomial(x: int, j: int) -> Fraction:
    num = 1
    for t in range(j):
        num *= x - t
    return Fraction(num, 1) / _factorial(j)


def _factorial(j: int) -> int:
    out = 1
    for t in range(2, j + 1):
        out *= t
    return out


@dataclass(frozen=True)
class LValue:
    s: int
    character_exponent: int
    value: PadicScalar
    terms_used: int
    inner_valuation: int | float
    trivial_character: bool


def _check_s(s: int) -> None:
    if s < 3 or s % 2 == 0:
        raise ValueError(f"s must be an odd integer >= 3, got {s}")


def interpolation_series(
    s: int,
    ctx: Context,
    policy: TruncationPolicy | None = None,
    extra_terms: int = 0,
) -> tuple[PadicScalar, int]:
    """The inner sum ``sum_a a^(1-s) sum_j C(1-s, j) (p/a)^j Bern_j`` and the
    number of j-terms used.

    Valid for any integer ``s != 1``; at ``s = 1 - n`` it terminates and
    ``interpolation_series / (p (s-1))`` is the classical value
    ``-(1 - p^(n-1)) Bern_n / n``.  ``extra_terms`` forces that many terms
    past the certified cutoff (used to check truncation stability).
    """
    if s == 1:
        raise ValueError("s = 1 is the pole")
    policy = policy or TruncationPolicy.for_context(ctx)
    p = ctx.p
    # dividing by p (s-1) costs 1 + v_p(s-1) digits of absolute precision
    loss = 1 + vp(s - 1, p)
    inner_policy = TruncationPolicy(
        policy.target_valuation + loss,
        policy.stability_window + extra_terms,
        policy.hard_cap,
    )
    weights = [Fraction(a) ** (1 - s) for a in range(1, p)]

    def term(j: int) -> Fraction:
        bern = bernoulli_numbers(j)[j]
        if not bern:
            return Fraction(0)
        power = sum(w * Fraction(p, a) ** j for a, w in zip(range(1, p), weights))
        return generalized_binomial(1 - s, j) * bern * power

    # v_p(Bern_j) >= -1 and (p/a)^j contributes j
    res = series_sum(term, inner_policy, lambda j: j - 1, ctx)
    return res.value, res.terms


def lp_value(
    s: int,
    ctx: Context,
    policy: TruncationPolicy | None = None,
    extra_terms: int = 0,
) -> LValue:
    """``L_p(s, omega^(1-s))`` to the policy's target precision.

    For a nontrivial character the inner sum must be divisible by p before
    the ``1/p`` is applied; :class:`InnerSumValuationTooLow` otherwise.
    """
    _check_s(s)
    p = ctx.p
    inner, terms = interpolation_series(s, ctx, policy, extra_terms)
    trivial = (s - 1) % (p - 1) == 0
    inner_val = INF if inner.is_zero else inner.valuation
    if not trivial and inner_val < 1:
        raise InnerSumValuationTooLow(
            f"inner sum has valuation {inner_val} < 1 at p={p}, s={s}"
        )
    value = inner * Fraction(1, p * (s - 1))
    return LValue(s, (1 - s) % (p - 1), value, terms, inner_val, trivial)


def zeta_p(s: int, ctx: Context, policy: TruncationPolicy | None = None) -> LValue:
    """``zeta_p(s) = p^s / (p^s - 1) * L_p(s, omega^(1-s))``."""
    lv = lp_value(s, ctx, policy)
    p = ctx.p
    factor = Fraction(p**s, p**s - 1)
    return LValue(
        s, lv.character_exponent, lv.value * factor, lv.terms_used, lv.inner_valuation,
        lv.trivial_character,
    )


@dataclass(frozen=True)
class Delta3Comparison:
    p: int
    delta3: PadicScalar
    lp_over_3: PadicScalar
    digits_agreed: int | float
    agree: bool
    caveat: str | None = None


def compare_delta3(ctx: Context, policy: TruncationPolicy | None = None) -> Delta3Comparison:
    """Compare ``Delta_3`` (from the Dwork brackets) with ``L_p(3, omega^-2)/3``."""
    policy = policy or TruncationPolicy.for_context(ctx)
    d3 = delta_s(3, ctx, policy)
    lv = lp_value(3, ctx, policy)
    target = lv.value * Fraction(1, 3)
    k = digits_agreed(d3, target)
    known = min(d3.absolute_precision, target.absolute_precision) - min(
        d3.valuation, target.valuation
    )
    need = min(AGREEMENT_DIGITS, known)
    agree = need >= AGREEMENT_DIGITS and agree_to(d3, target, AGREEMENT_DIGITS)
    caveat = None
    if lv.trivial_character:
        caveat = (
            f"omega^-2 is the trivial character mod {ctx.p}; "
            "value compared under the same interpolation formula"
        )
    return Delta3Comparison(ctx.p, d3, target, min(k, known), agree, caveat)
