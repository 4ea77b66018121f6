"""The mirror quintic at lambda = 0: delta-expansions, the Picard-Fuchs
coefficients, the pairing constants c^alpha_I, and the Frobenius matrix.

Conventions
-----------
* ``pi`` (a root of ``pi^(p-1) = -p``) is never evaluated.  An
  :class:`OmegaSVector` stores the rational coefficient of ``pi^s omega_s``.
* The Yukawa constant ``Y = (omega, delta^3 omega)_0`` is normalized to 1.
* :class:`FrobeniusMatrix` stores rows: row ``i`` holds the coordinates of
  ``Fr(delta^i omega)`` in the basis ``omega, delta omega, delta^2 omega,
  delta^3 omega``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .brackets import bracket_F, bracket_L, d_value, delta_s
from .dwork import TruncationPolicy, bracket_tail_bound, dwork_coefficients
from .padic import (
    INF,
    Context,
    PadicScalar,
    agree_to,
    from_rational,
    is_zero_to,
    vp_rational,
    zero_to,
)

__all__ = [
    "OmegaSVector",
    "MultiIndex",
    "FrobeniusMatrix",
    "SingularSystem",
    "IdentityViolated",
    "MirrorPrimeError",
    "delta_power_expansion",
    "delta_power_by_srelation",
    "solve_exact",
    "picard_fuchs_solve",
    "c_recursive",
    "c_descend",
    "c_closed",
    "ghat",
    "first_row",
    "first_row_bruteforce",
    "BruteForceRow",
    "gram_matrix",
    "delta_matrix",
    "frobenius_matrix",
    "compositions",
]

RANK = 4
SLOTS = 5


class SingularSystem(ArithmeticError):
    pass


class IdentityViolated(ArithmeticError):
    pass


class MirrorPrimeError(ValueError):
    pass


def require_mirror_prime(ctx: Context) -> None:
    if ctx.p == 5:
        raise MirrorPrimeError("the mirror quintic family requires p != 5")


# -- delta-expansions ---------------------------------------------------------


@dataclass(frozen=True)
class OmegaSVector:
    """Finite combination ``sum_s coeffs[s] * pi^s * omega_s``."""

    coeffs: tuple[Fraction, ...] = ()

    @classmethod
    def from_mapping(cls, mapping: dict[int, Fraction]) -> OmegaSVector:
        top = max((s for s, c in mapping.items() if c), default=-1)
        return cls(tuple(Fraction(mapping.get(s, 0)) for s in range(top + 1)))

    def __getitem__(self, s: int) -> Fraction:
        return self.coeffs[s] if 0 <= s < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def apply_delta(self) -> OmegaSVector:
        """``delta omega_s = -(s+1) omega_s - pi omega_{s+1}`` applied termwise."""
        out: dict[int, Fraction] = {}
        for s, c in enumerate(self.coeffs):
            out[s] = out.get(s, 0) - (s + 1) * c
            out[s + 1] = out.get(s + 1, 0) - c
        return OmegaSVector.from_mapping(out)

    def without(self, s: int) -> OmegaSVector:
        return OmegaSVector.from_mapping({t: c for t, c in enumerate(self.coeffs) if t != s})


def delta_power_expansion(i: int) -> OmegaSVector:
    """``delta^i omega`` from the closed form

        a^i_j = (-1)^(i+j) sum_{a+b=j} (-1)^a (a+1)^i / (a! b!)
    """
    coeffs = {}
    for j in range(i + 1):
        total = sum(
            Fraction((-1) ** a * (a + 1) ** i, math.factorial(a) * math.factorial(j - a))
            for a in range(j + 1)
        )
        coeffs[j] = (-1) ** (i + j) * total
    return OmegaSVector.from_mapping(coeffs)


def delta_power_by_srelation(i: int) -> OmegaSVector:
    vec = OmegaSVector((Fraction(1),))
    for _ in range(i):
        vec = vec.apply_delta()
    return vec


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def picard_fuchs_solve(order: Sequence[int] = (3, 2, 1, 0)) -> tuple[Fraction, ...]:
    """Coefficients ``a_k`` with ``sum_k a_k delta^k omega`` equal to ``delta^4 omega``
    minus its ``pi^4 omega_4`` part, returned in ``order`` (default a3, a2, a1, a0).
    """
    basis = {k: delta_power_expansion(k) for k in range(RANK)}
    target = delta_power_expansion(RANK).without(RANK)
    matrix = [[basis[k][s] for k in order] for s in range(RANK)]
    return tuple(solve_exact(matrix, [target[s] for s in range(RANK)]))


# -- pairing constants c^alpha_I ----------------------------------------------


@dataclass(frozen=True)
class MultiIndex:
    """Indices ``(i, j, k, n, m)`` in canonical (descending) order plus ``s``."""

    indices: tuple[int, ...]
    s: int = 0

    def __post_init__(self):
        if len(self.indices) != SLOTS:
            raise ValueError(f"need {SLOTS} slot indices, got {len(self.indices)}")
        if min(self.indices) < 0 or self.s < 0:
            raise ValueError("indices must be non-negative")
        object.__setattr__(self, "indices", tuple(sorted(self.indices, reverse=True)))

    @classmethod
    def of(cls, *indices: int, s: int = 0) -> MultiIndex:
        padded = tuple(indices) + (0,) * (SLOTS - len(indices))
        return cls(padded, s)

    @property
    def sharp(self) -> int:
        return sum(1 for i in self.indices if i)

    def chi(self, alpha: int) -> int:
        return 3 - self.sharp - alpha


@lru_cache(maxsize=None)
def _c_rec(alpha: int, indices: tuple[int, ...], s: int) -> Fraction:
    if alpha > 3:
        return Fraction(0)
    if s > 0:
        return s * _c_rec(alpha, indices, s - 1) - _c_rec(alpha + 1, indices, s - 1)
    if indices[0] > 0:
        i = indices[0] - 1
        lowered = tuple(sorted((i,) + indices[1:], reverse=True))
        return i * _c_rec(alpha, lowered, 0) + _c_rec(alpha + 1, lowered, 0) / 5
    return Fraction(1) if alpha == 3 else Fraction(0)


def c_recursive(alpha: int, index: MultiIndex) -> Fraction:
    """c^alpha_I by descending the two reduction relations to the zero index.

    Base data: ``c^3 = 1`` and ``c^(0,1,2) = 0`` at the zero index, ``c^(>3) = 0``.
    """
    return _c_rec(alpha, index.indices, index.s)


def c_descend(alpha: int, indices: Sequence[int], s: int) -> Fraction:
    """Uncached recursion that lowers the first nonzero index in the given order.

    Exists to test that the recursion is symmetric without relying on
    canonical ordering.
    """
    if alpha > 3:
        return Fraction(0)
    if s > 0:
        return s * c_descend(alpha, indices, s - 1) - c_descend(alpha + 1, indices, s - 1)
    for pos, i in enumerate(indices):
        if i > 0:
            lowered = list(indices)
            lowered[pos] = i - 1
            return (i - 1) * c_descend(alpha, lowered, 0) + c_descend(alpha + 1, lowered, 0) / 5
    return Fraction(1) if alpha == 3 else Fraction(0)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _dbar(alpha: int, s: int) -> int:
    return (-1) ** alpha * d_value(alpha, s)


def _dhat(alpha: int, i: int) -> Fraction:
    if i == 0:
        return Fraction(1 if alpha == 0 else 0)
    return Fraction(d_value(alpha, i - 1), 5 ** (alpha + 1))


def c_closed(alpha: int, index: MultiIndex) -> Fraction:
    """c^alpha_I from the closed product formula; zero when ``chi < 0``."""
    chi = index.chi(alpha)
    if chi < 0:
        return Fraction(0)
    total = Fraction(0)
    for gamma, *betas in compositions(chi, SLOTS + 1):
        term = Fraction(_dbar(gamma, index.s))
        for beta, i in zip(betas, index.indices):
            term *= _dhat(beta, i)
            if not term:
                break
        total += term
    return total


# -- first row -----------------------------------------------------------------


def ghat(beta: int, ctx: Context, policy: TruncationPolicy | None = None) -> PadicScalar:
    """Per-slot weight: 1 for beta = 0, else ``L(beta-1) / 5^beta``."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if beta == 0:
        return from_rational(1, ctx)
    return bracket_L(beta - 1, ctx, policy).value * Fraction(1, 5**beta)


def first_row(
    ctx: Context, policy: TruncationPolicy | None = None, check: bool = True
) -> dict[int, PadicScalar]:
    """``R_alpha`` with ``(Fr omega, delta^alpha omega)_0 = -p^5 Y R_alpha``.

    Each slot of the six-fold sum factorizes, so
    ``R_alpha = sum_{gamma + e_1 + ... + e_5 = 3 - alpha} F(gamma) prod_k ghat(e_k)``.
    With ``check`` the identities ``R_3 = -1`` and ``R_2 = R_1 = 0`` are
    enforced to ``ctx.digits``.
    """
    require_mirror_prime(ctx)
    policy = policy or TruncationPolicy.for_context(ctx)
    F = [bracket_F(g, ctx, policy).value for g in range(4)]
    G = [ghat(b, ctx, policy) for b in range(4)]
    row = {}
    for alpha in range(3, -1, -1):
        total = from_rational(0, ctx)
        for gamma, *es in compositions(3 - alpha, SLOTS + 1):
            term = F[gamma]
            for e in es:
                if e:
                    term = term * G[e]
            total = total + term
        row[alpha] = total
    if check:
        n = ctx.digits
        if not agree_to(row[3], from_rational(-1, ctx), n):
            raise IdentityViolated(f"R_3 != -1 at p={ctx.p}")
        for alpha in (2, 1):
            if not is_zero_to(row[alpha], n):
                raise IdentityViolated(f"R_{alpha} != 0 to {n} digits at p={ctx.p}")
    return row


@dataclass(frozen=True)
class BruteForceRow:
    values: dict[int, PadicScalar]
    certified_digits: int
    cutoff: int
    terms: int = field(default=0)


def first_row_bruteforce(
    ctx: Context, cutoff: int, digit_target: int | None = None
) -> BruteForceRow:
    """The six-fold first-row sum, enumerated term by term.

    ``R_alpha = sum B_i B_j B_k B_n B_m B_s c^alpha_{ijknm(s+p-1)}`` with every
    index at most ``cutoff``.  The c-values come from the reduction relations
    (the zero index through the i-relation, then the s-relation run forward);
    index tuples are grouped by their permutation count and tuples with
    ``alpha + #(I) > 3`` are skipped.  The omitted tail is bounded slot by
    slot, which yields ``certified_digits``; asking for more raises.
    """
    require_mirror_prime(ctx)
    p = ctx.p
    smax = cutoff + p - 1
    # exact slot valuations up to here; the analytic bounds are monotone beyond
    exact_end = 4 * cutoff + 4 * p * p
    table = dwork_coefficients(p, exact_end)

    def v_slot_L(beta: int, i: int) -> float:
        return vp_rational(table[i] * d_value(beta, i - 1), p)

    def v_slot_F(gamma: int, s: int) -> float:
        return vp_rational(table[s] * d_value(gamma, s + p - 1), p)

    vL = [[v_slot_L(b, i) for i in range(1, exact_end + 1)] for b in range(4)]
    vF = [[v_slot_F(g, s) for s in range(exact_end + 1)] for g in range(4)]
    far_L = [bracket_tail_bound(p, b, -1)(exact_end + 1) for b in range(4)]
    far_F = [bracket_tail_bound(p, g, p - 1)(exact_end + 1) for g in range(4)]
    mL = [min(min(vL[b]), far_L[b]) for b in range(4)]
    mF = [min(min(vF[g]), far_F[g]) for g in range(4)]
    tailL = [min(min(vL[b][cutoff:]), far_L[b]) for b in range(4)]
    tailF = [min(min(vF[g][cutoff + 1 :]), far_F[g]) for g in range(4)]
    certified = INF
    for alpha in range(4):
        for z in range(0, 4 - alpha):
            for gamma, *betas in compositions(3 - alpha - z, z + 1):
                rest_L = sum(mL[b] for b in betas)
                certified = min(certified, tailF[gamma] + rest_L)
                for b in betas:
                    others = rest_L - mL[b]
                    certified = min(certified, tailL[b] + others + mF[gamma])
    certified = math.floor(certified)
    if digit_target is not None and digit_target > certified:
        raise IdentityViolated(
            f"cutoff {cutoff} certifies only {certified} digits, {digit_target} requested"
        )
    digits = certified if digit_target is None else digit_target

    scale = max(0, -min(vp_rational(table[i], p) for i in range(smax + 1)))
    modulus = p ** (digits + 4 * scale + 2)

    def residue(q: Fraction) -> int:
        return q.numerator * pow(q.denominator, -1, modulus) % modulus

    b_scaled = [residue(table[i] * Fraction(p) ** scale) for i in range(smax + 1)]
    totals = [0, 0, 0, 0]
    terms = 0
    for z in range(0, 4):
        for nonzero in combinations_with_replacement(range(cutoff, 0, -1), z):
            indices = tuple(nonzero) + (0,) * (SLOTS - z)
            mult = _permutation_count(indices)
            weight = mult * p ** (scale * (3 - z))
            for i in nonzero:
                weight = weight * b_scaled[i] % modulus
            # c^a at s = 0 for a = 0..3, then step the s-relation forward
            chain = [residue(_c_rec(a, indices, 0)) for a in range(4)] + [0]
            inner = [0, 0, 0, 0]
            for s in range(smax + 1):
                if s >= p - 1:
                    b = b_scaled[s - (p - 1)]
                    for a in range(4 - z):
                        inner[a] += b * chain[a]
                chain = [((s + 1) * chain[a] - chain[a + 1]) % modulus for a in range(4)] + [0]
            for a in range(4 - z):
                totals[a] = (totals[a] + weight * inner[a]) % modulus
                terms += 1
    values = {
        a: PadicScalar._from_residue(ctx, -4 * scale, totals[a], digits) for a in range(4)
    }
    return BruteForceRow(values, digits, cutoff, terms)


def _permutation_count(indices: tuple[int, ...]) -> int:
    count = math.factorial(len(indices))
    for value in set(indices):
        count //= math.factorial(indices.count(value))
    return count


# -- the matrix -------------------------------------------------------------------


def gram_matrix(ctx: Context) -> list[list[PadicScalar]]:
    """``(delta^i omega, delta^j omega)_0 / Y``: ``(-1)^i`` on the antidiagonal."""
    return [
        [from_rational((-1) ** i if i + j == 3 else 0, ctx) for j in range(RANK)]
        for i in range(RANK)
    ]


def delta_matrix(ctx: Context) -> list[list[PadicScalar]]:
    """delta on the basis at lambda = 0 (rows are images): shift up, delta^4 omega = 0."""
    return [
        [from_rational(1 if j == i + 1 else 0, ctx) for j in range(RANK)]
        for i in range(RANK)
    ]


def _matmul(a, b, ctx):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = from_rational(0, ctx)
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def _transpose(a):
    return [list(r) for r in zip(*a)]


@dataclass(frozen=True)
class FrobeniusMatrix:
    ctx: Context
    entries: tuple[tuple[PadicScalar, ...], ...]
    convention: str
    delta3: PadicScalar
    yukawa_normalized: bool = True

    def __getitem__(self, ij: tuple[int, int]) -> PadicScalar:
        i, j = ij
        return self.entries[i][j]

    @property
    def scale(self) -> int:
        """Power of p by which this convention exceeds the standard one."""
        return 2 if self.convention == "dwork" else 0

    def nonzero_off_diagonal(self, digits: int | None = None) -> list[tuple[int, int]]:
        digits = self.ctx.digits if digits is None else digits
        return [
            (i, j)
            for i in range(RANK)
            for j in range(RANK)
            if i != j and not is_zero_to(self.entries[i][j], digits + self.scale)
        ]

    def symplectic_defect(self) -> list[list[PadicScalar]]:
        """``M G M^T - p^(3 + 2 scale) G``; zero when Fr respects the pairing."""
        ctx = self.ctx
        g = gram_matrix(ctx)
        m = [list(r) for r in self.entries]
        lhs = _matmul(_matmul(m, g, ctx), _transpose(m), ctx)
        factor = ctx.p ** (3 + 2 * self.scale)
        return [[lhs[i][j] - g[i][j] * factor for j in range(RANK)] for i in range(RANK)]

    def delta_defect(self) -> list[list[PadicScalar]]:
        """``M D - p D M``; zero when ``delta Fr = p Fr delta``."""
        ctx = self.ctx
        d = delta_matrix(ctx)
        m = [list(r) for r in self.entries]
        md = _matmul(m, d, ctx)
        dm = _matmul(d, m, ctx)
        return [[md[i][j] - dm[i][j] * ctx.p for j in range(RANK)] for i in range(RANK)]


def frobenius_matrix(
    ctx: Context,
    policy: TruncationPolicy | None = None,
    convention: str = "standard",
) -> FrobeniusMatrix:
    """Assemble Fr at lambda = 0 from the first row.

    Pairings ``(Fr delta^i omega, delta^j omega)_0 = (-1)^i p^(-i) (Fr omega,
    delta^(i+j) omega)_0`` vanish for ``i + j > 3``; inverting the Gram
    matrix turns them into matrix rows.
    """
    if convention not in ("standard", "dwork"):
        raise ValueError(f"unknown convention {convention!r}")
    require_mirror_prime(ctx)
    policy = policy or TruncationPolicy.for_context(ctx)
    row = first_row(ctx, policy)
    p = ctx.p

    def first_pairing(k: int) -> PadicScalar:
        if k > 3:
            return from_rational(0, ctx)
        return row[k] * (-(p**5))

    pairing = [
        [first_pairing(i + j) * Fraction((-1) ** i, p**i) for j in range(RANK)]
        for i in range(RANK)
    ]
    # Gram inverse is antidiagonal with (G^-1)[3-k][k] = (-1)^k
    entries = [
        [pairing[i][3 - k] * (-1) ** k for k in range(RANK)] for i in range(RANK)
    ]
    if convention == "standard":
        entries = [[e * Fraction(1, p * p) for e in r] for r in entries]
    return FrobeniusMatrix(
        ctx,
        tuple(tuple(r) for r in entries),
        convention,
        delta_s(3, ctx, policy),
    )
