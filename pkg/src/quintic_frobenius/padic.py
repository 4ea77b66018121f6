"""Valuation-aware p-adic scalars over Q_p.

A nonzero scalar is stored as ``p**valuation * unit`` where ``unit`` is a
p-adic unit known modulo ``p**precision`` (relative precision).  Exact zero
is a distinguished value; a quantity that is merely zero to the digits we
know ("inexact zero") keeps ``unit == 0``, ``precision == 0`` and records
the absolute precision in ``valuation``.

Exact rationals are plain :class:`fractions.Fraction` objects.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Context",
    "PadicScalar",
    "PadicError",
    "PrecisionExhausted",
    "NotCoprime",
    "from_rational",
    "zero_to",
    "teichmuller",
    "render_digits",
    "parse_digits",
    "agree_to",
    "digits_agreed",
    "is_zero_to",
    "vp",
    "vp_rational",
    "is_prime",
]

INF = math.inf

_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_UNSUPERSCRIPTS = {v: k for k, v in zip("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")}


class PadicError(ArithmeticError):
    pass


class PrecisionExhausted(PadicError):
    pass


class NotCoprime(PadicError, ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp(n: int, p: int) -> int | float:
    """p-adic valuation of an integer (``inf`` for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    # squaring ladder p, p^2, p^4, ...; numerators here run to thousands of digits
    ladder = [p]
    while n % ladder[-1] == 0:
        ladder.append(ladder[-1] * ladder[-1])
    v = 0
    for i in range(len(ladder) - 2, -1, -1):
        if n % ladder[i] == 0:
            n //= ladder[i]
            v += 1 << i
    return v


def vp_rational(r: Rational, p: int) -> int | float:
    r = Fraction(r)
    if r == 0:
        return INF
    return vp(r.numerator, p) - vp(r.denominator, p)


@dataclass(frozen=True)
class Context:
    """Prime and precision shared by every scalar in one computation.

    ``digits`` is the reported precision N; ``margin`` guard digits are
    carried on top of it.
    """

    p: int
    digits: int = 15
    margin: int = 10

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.margin < 0:
            raise ValueError("margin must be >= 0")

    @property
    def carried(self) -> int:
        return self.digits + self.margin


@dataclass(frozen=True, eq=False)
class PadicScalar:
    ctx: Context
    valuation: int | float
    unit: int
    precision: int | float

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    @property
    def is_zero(self) -> bool:
        """True for exact zero and for zero-to-known-precision."""
        return self.unit == 0

    @property
    def absolute_precision(self) -> int | float:
        return self.valuation + self.precision

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _from_residue(cls, ctx: Context, shift: int, residue: int, absprec: int) -> PadicScalar:
        """Scalar equal to ``p**shift * residue`` known modulo ``p**absprec``."""
        p = ctx.p
        rel = absprec - shift
        if rel <= 0:
            return zero_to(absprec, ctx)
        residue %= p**rel
        if residue == 0:
            return zero_to(absprec, ctx)
        v = 0
        while residue % p == 0:
            residue //= p
            v += 1
        return cls(ctx, shift + v, residue, rel - v)

    def _check(self, other: PadicScalar) -> None:
        if other.ctx != self.ctx:
            raise ValueError("operands belong to different contexts")

    def _coerce(self, other) -> PadicScalar:
        if isinstance(other, PadicScalar):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return from_rational(other, self.ctx)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------------

    def __neg__(self) -> PadicScalar:
        if self.is_zero:
            return self
        return PadicScalar(self.ctx, self.valuation, (-self.unit) % self.p**self.precision, self.precision)

    def __add__(self, other) -> PadicScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        absprec = min(self.absolute_precision, other.absolute_precision)
        vmin = min(self.valuation, other.valuation)
        p = self.p
        total = self.unit * p ** (self.valuation - vmin) + other.unit * p ** (other.valuation - vmin)
        return PadicScalar._from_residue(self.ctx, vmin, total, absprec)

    __radd__ = __add__

    def __sub__(self, other) -> PadicScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> PadicScalar:
        return (-self) + other

    def __mul__(self, other) -> PadicScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_exact_zero or other.is_exact_zero:
            return from_rational(0, self.ctx)
        prec = min(self.precision, other.precision)
        v = self.valuation + other.valuation
        if prec <= 0:
            return zero_to(v, self.ctx)
        return PadicScalar(self.ctx, v, self.unit * other.unit % self.p**prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> PadicScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_exact_zero:
            raise ZeroDivisionError("division by exact p-adic zero")
        if other.is_zero:
            raise PrecisionExhausted("divisor is zero to its known precision")
        if self.is_exact_zero:
            return self
        v = self.valuation - other.valuation
        if self.is_zero:
            return zero_to(v, self.ctx)
        prec = min(self.precision, other.precision)
        if prec < self.ctx.digits:
            raise PrecisionExhausted(
                f"quotient keeps {prec} digits, fewer than the {self.ctx.digits} reported"
            )
        mod = self.p**prec
        return PadicScalar(self.ctx, v, self.unit * pow(other.unit, -1, mod) % mod, prec)

    def __rtruediv__(self, other) -> PadicScalar:
        return from_rational(other, self.ctx) / self

    def __pow__(self, k: int) -> PadicScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return from_rational(1, self.ctx) / self**(-k)
        out = from_rational(1, self.ctx)
        for _ in range(k):
            out = out * self
        return out

    def residue(self, k: int | None = None) -> int:
        """Unit reduced modulo ``p**k`` (default: the reported digits)."""
        k = self.ctx.digits if k is None else k
        if self.precision < k:
            raise PrecisionExhausted(f"only {self.precision} digits known, {k} requested")
        return self.unit % self.p**k

    def __repr__(self) -> str:
        if self.is_exact_zero:
            return f"PadicScalar(p={self.p}, 0)"
        if self.is_zero:
            return f"PadicScalar(p={self.p}, O({self.p}^{self.valuation}))"
        return f"PadicScalar(p={self.p}, v={self.valuation}, unit={self.unit}, prec={self.precision})"

    def __str__(self) -> str:
        if self.is_exact_zero:
            return "0"
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        return render_digits(self, min(self.precision, self.ctx.digits))


def from_rational(r, ctx: Context, absprec: int | None = None) -> PadicScalar:
    """Embed a rational into Q_p.

    By default ``ctx.carried`` digits of relative precision are kept; with
    ``absprec`` the value is instead known modulo ``p**absprec``.
    """
    r = Fraction(r)
    if r == 0:
        return PadicScalar(ctx, INF, 0, INF)
    p = ctx.p
    vn, vd = vp(r.numerator, p), vp(r.denominator, p)
    v = vn - vd
    rel = ctx.carried if absprec is None else absprec - v
    if rel <= 0:
        return zero_to(absprec, ctx)
    mod = p**rel
    num = r.numerator // p**vn
    den = r.denominator // p**vd
    return PadicScalar(ctx, v, num * pow(den, -1, mod) % mod, rel)


def zero_to(absprec: int, ctx: Context) -> PadicScalar:
    """A value known only to be divisible by ``p**absprec``."""
    return PadicScalar(ctx, absprec, 0, 0)


def teichmuller(a: int, ctx: Context) -> PadicScalar:
    """The (p-1)-st root of unity congruent to ``a`` mod p."""
    p = ctx.p
    if a % p == 0:
        raise NotCoprime(f"{a} is divisible by {p}")
    mod = p**ctx.carried
    x = a % p
    while True:
        y = pow(x, p, mod)
        if y == x:
            break
        x = y
    return PadicScalar(ctx, 0, x, ctx.carried)


def _pow_label(p: int, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return f"·{p}"
    return f"·{p}" + str(e).translate(_SUPERSCRIPTS)


def render_digits(x: PadicScalar, k: int) -> str:
    """Base-p expansion ``d0 + d1·p + d2·p² + ...`` of the first ``k`` digits.

    A nonzero valuation is shown as a ``p^v · (...)`` prefix.
    """
    if x.is_exact_zero:
        return "0"
    if x.precision < k:
        raise PrecisionExhausted(f"{k} digits requested, {x.precision} known")
    p, u = x.p, x.unit
    terms = []
    for i in range(k):
        u, d = divmod(u, p)
        terms.append(f"{d}{_pow_label(p, i)}")
    body = " + ".join(terms)
    if x.valuation == 0:
        return body
    return f"{p}^{x.valuation} · ({body})"


_PREFIX = re.compile(r"^\s*(\d+)\^(-?\d+)\s*·\s*\((.*)\)\s*$")


def parse_digits(text: str, p: int) -> tuple[int, int, int]:
    """Inverse of :func:`render_digits`: returns ``(valuation, unit, k)``."""
    text = text.strip()
    valuation = 0
    m = _PREFIX.match(text)
    if m:
        if int(m.group(1)) != p:
            raise ValueError(f"expansion is in base {m.group(1)}, not {p}")
        valuation = int(m.group(2))
        text = m.group(3)
    unit = 0
    terms = [t.strip() for t in text.split("+")]
    for i, term in enumerate(terms):
        digit, _, power = term.partition("·")
        exp = 0
        if power:
            sup = power[len(str(p)):]
            exp = int("".join(_UNSUPERSCRIPTS[c] for c in sup)) if sup else 1
        if exp != i:
            raise ValueError(f"term {term!r} out of order")
        unit += int(digit) * p**i
    return valuation, unit, len(terms)


def digits_agreed(x: PadicScalar, y: PadicScalar) -> int | float:
    """Largest k with v(x - y) >= min(v(x), v(y)) + k, capped by what is known."""
    if x.is_exact_zero and y.is_exact_zero:
        return INF
    base = min(x.valuation, y.valuation)
    diff = x - y
    if diff.is_zero:
        return diff.absolute_precision - base
    return diff.valuation - base


def agree_to(x: PadicScalar, y: PadicScalar, k: int) -> bool:
    """True iff x and y agree to ``k`` p-adic digits relative to the larger of them."""
    if x.is_exact_zero and y.is_exact_zero:
        return True
    base = min(x.valuation, y.valuation)
    if min(x.absolute_precision, y.absolute_precision) < base + k:
        raise PrecisionExhausted(f"operands are not known to {k} digits")
    return digits_agreed(x, y) >= k


def is_zero_to(x: PadicScalar, k: int) -> bool:
    """True iff x is divisible by ``p**k`` (known to at least that absolute precision)."""
    if x.is_exact_zero:
        return True
    if x.is_zero:
        if x.valuation < k:
            raise PrecisionExhausted(f"value only known modulo p^{x.valuation}")
        return True
    return x.valuation >= k
