"""Coefficients of the Dwork exponential and certified p-adic series summation.

``f(x) = exp(x^p/p + x) = sum B_n x^n``.  From ``f' = (1 + x^(p-1)) f`` the
coefficients obey ``n B_n = B_{n-1} + B_{n-p}``, which we run in exact
rationals.
"""
from __future__ import annotations

import logging
import math
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .padic import INF, Context, PadicScalar, from_rational, vp, vp_rational, zero_to

__all__ = [
    "CACHE_ENV",
    "DworkCoefficients",
    "TruncationPolicy",
    "TruncationCapExceeded",
    "DworkBoundViolation",
    "SeriesSum",
    "dwork_coefficients",
    "valuation_floor",
    "coefficient_floor",
    "check_dwork_bound",
    "series_sum",
    "bracket_tail_bound",
    "minus_one_identity",
    "write_cache",
    "read_cache",
]

log = logging.getLogger(__name__)

CACHE_ENV = "QUINTIC_FROBENIUS_CACHE"


class TruncationCapExceeded(RuntimeError):
    pass


class DworkBoundViolation(AssertionError):
    pass


def valuation_floor(n: int, p: int) -> Fraction:
    """Dwork's bound ``n(p-1)/p^2`` for the valuation of ``pi^n B_n``."""
    return Fraction(n * (p - 1), p * p)


def coefficient_floor(n: int, p: int) -> Fraction:
    """Lower bound for ``v_p(B_n)`` itself.

    ``pi`` has valuation ``1/(p-1)``, so the bound on ``pi^n B_n`` loses
    ``n/(p-1)`` when transferred to ``B_n``.  This is negative for large n;
    convergence of every series here comes from the factorial weights.
    """
    return valuation_floor(n, p) - Fraction(n, p - 1)


class DworkCoefficients:
    """Append-only, exact list ``B_0, B_1, ...`` for a single prime."""

    def __init__(self, p: int, coefficients: list[Fraction] | None = None):
        self.p = p
        self._coefficients: list[Fraction] = coefficients or [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._coefficients)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n >= len(self._coefficients):
            self.extend(n)
        return self._coefficients[n]

    def extend(self, n_max: int) -> None:
        with self._lock:
            b, p = self._coefficients, self.p
            for n in range(len(b), n_max + 1):
                b.append((b[n - 1] + (b[n - p] if n >= p else 0)) / n)

    def prefix(self, n_max: int) -> list[Fraction]:
        self.extend(n_max)
        return self._coefficients[: n_max + 1]


_TABLES: dict[int, DworkCoefficients] = {}
_TABLES_LOCK = threading.Lock()


def _cache_path(p: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"dwork_p{p}.txt"


def write_cache(path: Path, coefficients: list[Fraction]) -> None:
    """One coefficient per line, ``n numerator/denominator``, after a count header."""
    lines = [f"{len(coefficients)}"]
    lines += [f"{n} {c.numerator}/{c.denominator}" for n, c in enumerate(coefficients)]
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def read_cache(path: Path) -> list[Fraction]:
    lines = path.read_text().splitlines()
    count = int(lines[0])
    out = []
    for n, line in enumerate(lines[1 : count + 1]):
        idx, value = line.split()
        if int(idx) != n:
            raise ValueError(f"{path}: line for B_{n} is labelled {idx}")
        num, den = value.split("/")
        out.append(Fraction(int(num), int(den)))
    if len(out) != count:
        raise ValueError(f"{path}: expected {count} coefficients, found {len(out)}")
    return out


def dwork_coefficients(p: int, n_max: int) -> DworkCoefficients:
    """Shared coefficient table for ``p``, extended through ``B_{n_max}``."""
    with _TABLES_LOCK:
        table = _TABLES.get(p)
        if table is None:
            cached = None
            path = _cache_path(p)
            if path is not None and path.exists():
                try:
                    cached = read_cache(path)
                except (ValueError, IndexError, OSError) as exc:
                    log.warning("ignoring unreadable Dwork cache %s: %s", path, exc)
            table = _TABLES[p] = DworkCoefficients(p, cached)
    before = len(table)
    table.extend(n_max)
    path = _cache_path(p)
    if path is not None and len(table) > before:
        write_cache(path, table.prefix(len(table) - 1))
    return table


def check_dwork_bound(table: DworkCoefficients, n_max: int, slack: int = 0) -> None:
    """Abort if any ``v_p(B_n)`` falls below :func:`coefficient_floor` minus ``slack``."""
    p = table.p
    for n in range(n_max + 1):
        v = vp_rational(table[n], p)
        if v < coefficient_floor(n, p) - slack:
            raise DworkBoundViolation(
                f"v_{p}(B_{n}) = {v} < {coefficient_floor(n, p)} - {slack}"
            )


@dataclass(frozen=True)
class TruncationPolicy:
    target_valuation: int
    stability_window: int = 10
    hard_cap: int = 5000

    def __post_init__(self):
        if self.stability_window < 1:
            raise ValueError("stability_window must be >= 1")

    @classmethod
    def for_context(cls, ctx: Context, **kwargs) -> TruncationPolicy:
        return cls(target_valuation=ctx.carried, **kwargs)


@dataclass(frozen=True)
class SeriesSum:
    value: PadicScalar
    terms: int
    min_term_valuation: int | float = field(default=INF)


def series_sum(
    term: Callable[[int], Fraction],
    policy: TruncationPolicy,
    tail_bound: Callable[[int], float],
    ctx: Context,
) -> SeriesSum:
    """Sum ``term(0) + term(1) + ...`` modulo ``p**policy.target_valuation``.

    ``tail_bound(n)`` must be a lower bound for ``v_p(term(m))`` valid for
    every ``m >= n`` (return ``-inf`` where no such bound is available).
    Summation stops once that bound clears the target and the last
    ``stability_window`` terms also do.
    """
    target = policy.target_valuation
    acc = from_rational(0, ctx)
    seen_nonzero = False
    streak = 0
    v_min: int | float = INF
    for n in range(policy.hard_cap):
        t = term(n)
        if t:
            seen_nonzero = True
            v = vp(t.numerator, ctx.p) - vp(t.denominator, ctx.p)
            v_min = min(v_min, v)
            if v < target:
                acc = acc + from_rational(t, ctx, absprec=target)
                streak = 0
            else:
                streak += 1
        else:
            streak += 1
        if streak >= policy.stability_window and tail_bound(n + 1) >= target:
            if seen_nonzero:
                acc = acc + zero_to(target, ctx)
            return SeriesSum(acc, n + 1, v_min)
    raise TruncationCapExceeded(
        f"series did not reach valuation {target} within {policy.hard_cap} terms"
    )


def bracket_tail_bound(p: int, gamma: int, offset: int) -> Callable[[int], float]:
    """Valuation bound for ``B_n * D[gamma, n + offset]``, valid for all larger n.

    Combines :func:`coefficient_floor`, ``v_p(m!) >= m/(p-1) - (floor(log_p m) + 1)``
    and at most ``gamma`` harmonic denominators below ``m + 1`` (each costing
    ``floor(log_p m)``), with ``m = n + offset``.  ``offset`` is ``-1`` for the
    ``1/x`` brackets and ``p - 1`` for the ``x^(p-1)`` brackets.  The real
    logarithm makes the bound monotone past its stationary point; earlier
    arguments get ``-inf``.
    """
    slope = (p - 1) / (p * p)
    weight = gamma + 1
    turn = weight / (slope * math.log(p))
    const = offset / (p - 1) - 1

    def bound(n: int) -> float:
        m = n + offset
        if m < max(turn, 1):
            return -INF
        return slope * n + const - weight * math.log(m, p) - 1e-9

    return bound


def minus_one_identity(ctx: Context, policy: TruncationPolicy | None = None) -> SeriesSum:
    """``sum_s B_s (s+p-1)!``, which the reduction ``D x^(p-1) f = -f`` forces to be -1."""
    policy = policy or TruncationPolicy.for_context(ctx)
    p = ctx.p
    table = dwork_coefficients(p, p)
    fact = [math.factorial(p - 1)]

    def term(s: int) -> Fraction:
        while len(fact) <= s:
            fact.append(fact[-1] * (len(fact) + p - 1))
        return table[s] * fact[s]

    return series_sum(term, policy, bracket_tail_bound(p, 0, p - 1), ctx)
