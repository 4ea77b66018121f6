"""Command-line front end.

    python -m quintic_frobenius frobenius --prime 7
    python -m quintic_frobenius verify --primes 3,5,7,11,13 --suite all --format json
    python -m quintic_frobenius tables dmatrix --alpha 0..3 --beta 0..5

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
runtime errors.  JSON is the canonical output; text is a projection of it.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from .brackets import (
    bracket_F,
    bracket_L,
    d_value,
    d_value_by_words,
    delta_s,
    harmonic_bridge_holds,
    reduced_F,
)
from .cohomology import (
    RANK,
    SLOTS,
    MirrorPrimeError,
    MultiIndex,
    c_closed,
    c_recursive,
    delta_power_by_srelation,
    delta_power_expansion,
    first_row,
    first_row_bruteforce,
    frobenius_matrix,
    picard_fuchs_solve,
)
from .dwork import (
    CACHE_ENV,
    TruncationCapExceeded,
    TruncationPolicy,
    check_dwork_bound,
    dwork_coefficients,
    minus_one_identity,
)
from .lfunction import (
    AGREEMENT_DIGITS,
    bernoulli_numbers,
    compare_delta3,
    lp_value,
    von_staudt_denominator,
    zeta_p,
)
from .padic import (
    INF,
    Context,
    PadicError,
    PadicScalar,
    agree_to,
    digits_agreed,
    from_rational,
    is_zero_to,
)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
SUITES = ("dwork", "brackets", "cohomology", "lfunction")
PICARD_FUCHS = (-10, -35, -50, -24)
# cutoff of the six-fold oracle; certifies 5 digits at p = 3
BRUTEFORCE_CUTOFF = 50


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    primes: tuple[int, ...]
    digits: int = 15
    margin: int = 10
    convention: str = "standard"
    format: str = "text"
    truncation_cap: int = 5000
    timing: bool = False

    def __post_init__(self):
        if self.digits < 1:
            raise UsageError("--digits must be >= 1")
        if self.margin < 0:
            raise UsageError("--margin must be >= 0")
        for p in self.primes:
            if p == 2:
                raise UsageError("p = 2 is not supported")
            try:
                Context(p)
            except ValueError as exc:
                raise UsageError(str(exc)) from None

    def context(self, p: int) -> Context:
        return Context(p, self.digits, self.margin)

    def policy(self, ctx: Context) -> TruncationPolicy:
        return TruncationPolicy.for_context(ctx, hard_cap=self.truncation_cap)


@dataclass
class Check:
    name: str
    status: str
    digits_agreed: int | str | None = None
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "fail"


@dataclass
class Section:
    prime: int | None
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    n_max: dict = field(default_factory=dict)


@dataclass
class Report:
    command: str
    config: dict
    sections: list[Section] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def ok(self) -> bool:
        return not any(c.failed for s in self.sections for c in s.checks)

    def to_json(self) -> str:
        out = {"command": self.command, "config": self.config}
        out["sections"] = [asdict(s) for s in self.sections]
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        out["ok"] = self.ok
        return json.dumps(out, indent=2, ensure_ascii=False)


# -- serialization --------------------------------------------------------------


def scalar_json(x: PadicScalar) -> dict:
    """Digit expansion plus the pair (unit mod p^N, valuation)."""
    n = x.ctx.digits
    if x.is_exact_zero:
        return {"digits": "0", "valuation": None, "unit": 0, "exact_zero": True}
    if x.is_zero:
        return {"digits": str(x), "valuation": x.valuation, "unit": 0, "known_mod": x.valuation}
    k = min(n, x.precision)
    return {"digits": str(x), "valuation": x.valuation, "unit": x.unit % x.p**k, "unit_digits": k}


def _digits_field(k: int | float) -> int | str:
    return "exact" if k == INF else int(k)


def _run_check(section: Section, name: str, fn: Callable[[], tuple[bool, int | float | None, str]]):
    try:
        ok, k, detail = fn()
        section.checks.append(
            Check(name, "pass" if ok else "fail", None if k is None else _digits_field(k), detail)
        )
    except (ArithmeticError, AssertionError, TruncationCapExceeded, ValueError) as exc:
        section.checks.append(Check(name, "fail", None, f"{type(exc).__name__}: {exc}"))


def _skip(section: Section, name: str, reason: str) -> None:
    section.checks.append(Check(name, "skip", None, reason))


# -- verification suites --------------------------------------------------------


def _suite_dwork(cfg: RunConfig, ctx: Context, sec: Section) -> None:
    policy = cfg.policy(ctx)
    res = minus_one_identity(ctx, policy)
    sec.n_max["minus_one_identity"] = res.terms

    def minus_one():
        k = digits_agreed(res.value, from_rational(-1, ctx))
        return agree_to(res.value, from_rational(-1, ctx), ctx.digits), k, ""

    _run_check(sec, f"sum B_s (s+p-1)! = -1 ({ctx.digits} digits)", minus_one)

    def floor():
        check_dwork_bound(dwork_coefficients(ctx.p, res.terms), res.terms)
        return True, None, f"n <= {res.terms}"

    _run_check(sec, "B_n valuation floor", floor)


def _suite_brackets(cfg: RunConfig, ctx: Context, sec: Section) -> None:
    policy = cfg.policy(ctx)
    n = ctx.digits
    for g in range(4):
        sec.n_max[f"L{g}"] = bracket_L(g, ctx, policy).n_max_used
    for g in (1, 2, 3):
        def f_check(g=g):
            direct = bracket_F(g, ctx, policy, check=False)
            sec.n_max[f"F{g}"] = direct.n_max_used
            pred = reduced_F(g, ctx, policy)
            return agree_to(direct.value, pred, n), digits_agreed(direct.value, pred), ""

        _run_check(sec, f"F({g}) = (-1)^{g + 1} L({g - 1}) ({n} digits)", f_check)

    _run_check(sec, "Δ₁ = 0 (exact)", lambda: (delta_s(1, ctx, policy).is_exact_zero, INF, ""))

    def delta2():
        d2 = delta_s(2, ctx, policy)
        sec.results["delta2"] = scalar_json(d2)
        return is_zero_to(d2, n), None, str(d2)

    _run_check(sec, f"Δ₂ = 0 ({n} digits)", delta2)

    def delta3():
        d3 = delta_s(3, ctx, policy)
        sec.results["delta3"] = scalar_json(d3)
        return (not d3.is_zero and d3.valuation < n), None, f"valuation {d3.valuation}"

    _run_check(sec, f"Δ₃ ≠ 0 (valuation < {n})", delta3)

    def words():
        bad = [(a, b) for a in range(5) for b in range(9) if d_value(a, b) != d_value_by_words(a, b)]
        return not bad, None, f"mismatches {bad}" if bad else "alpha <= 4, beta <= 8"

    _run_check(sec, "D[α,β] recursion = word count", words)

    def bridge():
        bad = [(a, b) for a in range(5) for b in range(1, 20) if not harmonic_bridge_holds(a, b)]
        return not bad, None, f"mismatches {bad}" if bad else "alpha <= 4, beta < 20"

    _run_check(sec, "D[α,β-1] = (β-1)! S^α(β)", bridge)


def _exact_cohomology(sec: Section) -> None:
    def pf():
        got = tuple(picard_fuchs_solve())
        return got == PICARD_FUCHS, INF, str(tuple(int(x) if x.denominator == 1 else str(x) for x in got))

    _run_check(sec, "picard-fuchs = (−10,−35,−50,−24)", pf)

    def expansions():
        same = all(delta_power_expansion(i) == delta_power_by_srelation(i) for i in range(8))
        return same, None, "i <= 7"

    _run_check(sec, "δ^i ω closed form = s-relation", expansions)

    def oracle():
        bad = 0
        for alpha in range(4):
            for idx in combinations_with_replacement(range(6, -1, -1), SLOTS):
                for s in range(11):
                    mi = MultiIndex(idx, s)
                    if c_recursive(alpha, mi) != c_closed(alpha, mi):
                        bad += 1
        return bad == 0, None, f"{bad} mismatches (alpha <= 3, indices <= 6, s <= 10)"

    _run_check(sec, "c recursive = c closed form", oracle)

    def vanishing():
        bad = 0
        for alpha in range(4):
            for idx in combinations_with_replacement(range(6, -1, -1), SLOTS):
                for s in range(11):
                    mi = MultiIndex(idx, s)
                    if alpha + mi.sharp > 3 and c_recursive(alpha, mi) != 0:
                        bad += 1
        return bad == 0, None, f"{bad} nonzero"

    _run_check(sec, "c = 0 when α + #(I) > 3", vanishing)


def _suite_cohomology(cfg: RunConfig, ctx: Context, sec: Section, bruteforce: int | None) -> None:
    n = ctx.digits
    if ctx.p == 5:
        _skip(sec, "first row and matrix", "p = 5 is excluded for the mirror quintic family")
        return
    policy = cfg.policy(ctx)
    try:
        row = first_row(ctx, policy, check=False)
    except (ArithmeticError, TruncationCapExceeded) as exc:
        sec.checks.append(Check("first row", "fail", None, f"{type(exc).__name__}: {exc}"))
        return
    for a in range(4):
        sec.results[f"R{a}"] = scalar_json(row[a])
    d3 = delta_s(3, ctx, policy)
    minus_one = from_rational(-1, ctx)
    _run_check(
        sec, f"R₃ = -1 ({n} digits)",
        lambda: (agree_to(row[3], minus_one, n), digits_agreed(row[3], minus_one), ""),
    )
    for a in (2, 1):
        _run_check(sec, f"R{'₂₁'[2 - a]} = 0 ({n} digits)", lambda a=a: (is_zero_to(row[a], n), None, str(row[a])))
    r0_pred = d3 * Fraction(24, 25)
    _run_check(
        sec, f"R₀ = (24/25) Δ₃ ({n} digits)",
        lambda: (agree_to(row[0], r0_pred, n), digits_agreed(row[0], r0_pred), ""),
    )

    m = frobenius_matrix(ctx, policy, "standard")
    p = ctx.p

    def diagonal():
        diffs = [digits_agreed(m[i, i], from_rational(p ** (3 - i), ctx)) for i in range(RANK)]
        ok = all(agree_to(m[i, i], from_rational(p ** (3 - i), ctx), n) for i in range(RANK))
        return ok, min(diffs), f"({p**3}, {p**2}, {p}, 1)"

    _run_check(sec, "diagonal = (p³, p², p, 1)", diagonal)

    def off_diagonal():
        nz = m.nonzero_off_diagonal()
        target = d3 * Fraction(24 * p**3, 25)
        ok = nz == [(0, 3)] and agree_to(m[0, 3], target, n)
        return ok, digits_agreed(m[0, 3], target), f"nonzero at {nz}"

    _run_check(sec, "single off-diagonal entry p³(24/25)Δ₃", off_diagonal)

    def defect(rows, shift):
        return all(is_zero_to(x, n + shift) for r in rows for x in r)

    _run_check(sec, f"M G Mᵀ = p³ G ({n} digits)", lambda: (defect(m.symplectic_defect(), 3), None, ""))
    _run_check(sec, f"M D = p D M ({n} digits)", lambda: (defect(m.delta_defect(), 0), None, ""))

    if bruteforce is None and p == 3:
        bruteforce = BRUTEFORCE_CUTOFF
    if bruteforce is None:
        _skip(sec, "six-fold first row oracle", "enabled by default at p = 3 only (--bruteforce-cutoff)")
        return

    def brute():
        bf = first_row_bruteforce(ctx, bruteforce)
        sec.n_max["bruteforce_cutoff"] = bf.cutoff
        k = bf.certified_digits
        # certified digits are absolute: the oracle is known modulo p^k
        ok = k >= 5 and all(is_zero_to(row[a] - bf.values[a], k) for a in range(4))
        return ok, k, f"cutoff {bf.cutoff}, {bf.terms} index tuples"

    _run_check(sec, "six-fold first row oracle", brute)


def _suite_lfunction(cfg: RunConfig, ctx: Context, sec: Section) -> None:
    policy = cfg.policy(ctx)
    n = ctx.digits

    def staudt():
        table = bernoulli_numbers(60)
        bad = [j for j in range(2, 61, 2) if table[j].denominator != von_staudt_denominator(j)]
        return not bad, None, "j <= 60"

    _run_check(sec, "Bernoulli denominators (von Staudt-Clausen)", staudt)
    lv = lp_value(3, ctx, policy)
    sec.results["Lp3"] = scalar_json(lv.value)
    sec.n_max["Lp3"] = lv.terms_used
    if lv.trivial_character:
        _skip(sec, "inner sum valuation >= 1", f"ω^-2 is trivial mod {ctx.p}")
    else:
        _run_check(sec, "inner sum valuation >= 1", lambda: (lv.inner_valuation >= 1, None, f"valuation {lv.inner_valuation}"))

    def stability():
        wide = lp_value(3, ctx, policy, extra_terms=lv.terms_used)
        return agree_to(lv.value, wide.value, n), digits_agreed(lv.value, wide.value), f"{lv.terms_used} vs {wide.terms_used} terms"

    _run_check(sec, "Lp(3) stable under doubled truncation", stability)

    def zeta():
        z = zeta_p(3, ctx, policy)
        sec.results["zeta3"] = scalar_json(z.value)
        ratio = from_rational(Fraction(ctx.p**3, ctx.p**3 - 1), ctx)
        prod = lv.value * ratio
        return agree_to(z.value, prod, n), digits_agreed(z.value, prod), ""

    _run_check(sec, "ζ_p(3) = p³/(p³-1) Lp(3)", zeta)

    def conjecture():
        c = compare_delta3(ctx, policy)
        sec.results["Lp3_over_3"] = scalar_json(c.lp_over_3)
        detail = c.caveat or ""
        return c.agree, c.digits_agreed, detail

    _run_check(sec, f"delta3 vs Lp(3)/3: ≥{AGREEMENT_DIGITS} digits", conjecture)


def cmd_verify(cfg: RunConfig, suite: str = "all", bruteforce: int | None = None) -> Report:
    suites = SUITES if suite == "all" else (suite,)
    report = Report("verify", {**_config_echo(cfg), "suite": suite})
    if "cohomology" in suites:
        exact = Section(None)
        _exact_cohomology(exact)
        report.sections.append(exact)
    for p in cfg.primes:
        ctx = cfg.context(p)
        sec = Section(p)
        if "dwork" in suites:
            _suite_dwork(cfg, ctx, sec)
        if "brackets" in suites:
            _suite_brackets(cfg, ctx, sec)
        if "cohomology" in suites:
            _suite_cohomology(cfg, ctx, sec, bruteforce)
        if "lfunction" in suites:
            _suite_lfunction(cfg, ctx, sec)
        report.sections.append(sec)
    return report


# -- frobenius ------------------------------------------------------------------


def cmd_frobenius(cfg: RunConfig) -> Report:
    report = Report("frobenius", _config_echo(cfg))
    for p in cfg.primes:
        if p == 5:
            raise UsageError(
                "p = 5 is excluded: the mirror quintic family is only defined here for p ≠ 5"
            )
        ctx = cfg.context(p)
        policy = cfg.policy(ctx)
        m = frobenius_matrix(ctx, policy, cfg.convention)
        sec = Section(p)
        sec.results["matrix"] = [[scalar_json(m[i, j]) for j in range(RANK)] for i in range(RANK)]
        sec.results["delta3"] = scalar_json(m.delta3)
        sec.results["fr_omega_delta3_coefficient"] = scalar_json(m[0, 3])
        for g in range(3):
            sec.n_max[f"L{g}"] = bracket_L(g, ctx, policy).n_max_used
        shift = 3 + 2 * m.scale
        n = ctx.digits
        _run_check(
            sec, f"M G Mᵀ = p^{3 + 2 * m.scale} G ({n} digits)",
            lambda: (all(is_zero_to(x, n + shift) for r in m.symplectic_defect() for x in r), None, ""),
        )
        _run_check(
            sec, f"M D = p D M ({n} digits)",
            lambda: (all(is_zero_to(x, n + m.scale) for r in m.delta_defect() for x in r), None, ""),
        )
        nz = m.nonzero_off_diagonal()
        _run_check(sec, "one off-diagonal entry", lambda: (nz == [(0, 3)], None, f"nonzero at {nz}"))
        report.sections.append(sec)
    return report


# -- tables ---------------------------------------------------------------------


def parse_range(text: str) -> range:
    """``"0..3"`` is inclusive; a bare integer is a one-element range."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cmd_tables(what: str, args: argparse.Namespace) -> Report:
    sec = Section(None)
    config: dict = {"table": what}
    if what == "dwork":
        if args.prime is None:
            raise UsageError("tables dwork needs --prime")
        table = dwork_coefficients(args.prime, args.n)
        config.update(prime=args.prime, n=args.n)
        sec.prime = args.prime
        sec.results["B"] = [_frac(table[k]) for k in range(args.n + 1)]
    elif what == "dmatrix":
        config.update(alpha=[args.alpha.start, args.alpha.stop - 1], beta=[args.beta.start, args.beta.stop - 1])
        sec.results["D"] = {str(a): [d_value(a, b) for b in args.beta] for a in args.alpha}
    else:
        config.update(alpha=[args.alpha.start, args.alpha.stop - 1], max_index=args.max_index, s=[args.s.start, args.s.stop - 1])
        rows = []
        for alpha in args.alpha:
            for idx in combinations_with_replacement(range(args.max_index, -1, -1), SLOTS):
                for s in args.s:
                    rows.append({
                        "alpha": alpha,
                        "indices": list(idx),
                        "s": s,
                        "c": _frac(c_recursive(alpha, MultiIndex(idx, s))),
                    })
        sec.results["c"] = rows
    return Report("tables", config, [sec])


# -- text rendering ---------------------------------------------------------------


def render_text(report: Report) -> str:
    lines = [f"# {report.command}  " + " ".join(f"{k}={v}" for k, v in report.config.items())]
    for sec in report.sections:
        lines.append("")
        lines.append(f"== p = {sec.prime}" if sec.prime is not None else "== exact")
        for name, value in sec.results.items():
            lines.extend(_render_result(name, value))
        for c in sec.checks:
            if c.digits_agreed is None:
                k = ""
            elif c.digits_agreed == "exact":
                k = "  [exact]"
            else:
                k = f"  [{c.digits_agreed} digits]"
            detail = f"  {c.detail}" if c.detail else ""
            lines.append(f"  {c.status.upper():4}  {c.name}{k}{detail}")
        if sec.n_max:
            lines.append("  terms: " + ", ".join(f"{k}={v}" for k, v in sec.n_max.items()))
    if report.wall_time is not None:
        lines.append(f"\nwall time {report.wall_time:.2f}s")
    if any(s.checks for s in report.sections):
        lines.append("\nOK" if report.ok else "\nFAILED")
    return "\n".join(lines)


def _render_result(name: str, value) -> list[str]:
    if isinstance(value, dict) and "digits" in value:
        return [f"  {name} = {value['digits']}"]
    if name == "matrix":
        out = ["  matrix (row i = coordinates of Fr δ^i ω):"]
        for i, row in enumerate(value):
            for j, entry in enumerate(row):
                out.append(f"    [{i},{j}] {entry['digits']}")
        return out
    if name == "B":
        return [f"  B_{n} = {v}" for n, v in enumerate(value)]
    if name == "D":
        return [f"  α={a}: " + ", ".join(map(str, row)) for a, row in value.items()]
    if name == "c":
        return [
            f"  c^{r['alpha']}_{tuple(r['indices'])},s={r['s']} = {r['c']}" for r in value
        ]
    return [f"  {name} = {value}"]


# -- argument parsing -------------------------------------------------------------


def _config_echo(cfg: RunConfig) -> dict:
    out = asdict(cfg)
    out["primes"] = list(cfg.primes)
    out.pop("timing")
    return out


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quintic-frobenius",
        description="p-adic Frobenius matrix of the mirror quintic at the Fermat point.",
        epilog=f"Set {CACHE_ENV} to a directory to cache Dwork coefficient tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    primes = common.add_mutually_exclusive_group()
    primes.add_argument("--prime", type=int)
    primes.add_argument("--primes", type=_prime_list)
    common.add_argument("--digits", type=int, default=15)
    common.add_argument("--margin", type=int, default=10)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--truncation-cap", type=int, default=5000)
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    fr = sub.add_parser("frobenius", parents=[common], help="Frobenius matrix at lambda = 0")
    fr.add_argument("--convention", choices=("standard", "dwork"), default="standard")

    ver = sub.add_parser("verify", parents=[common], help="run identity checks")
    ver.add_argument("--suite", choices=("all",) + SUITES, default="all")
    ver.add_argument(
        "--bruteforce-cutoff", type=int, default=None,
        help=f"run the six-fold row oracle with this cutoff (default {BRUTEFORCE_CUTOFF} at p = 3 only)",
    )

    tab = sub.add_parser("tables", help="dump exact tables")
    tab.add_argument("what", choices=("dwork", "dmatrix", "cvalues"))
    tab.add_argument("--prime", type=int)
    tab.add_argument("-n", type=int, default=10)
    tab.add_argument("--alpha", type=parse_range, default=parse_range("0..3"))
    tab.add_argument("--beta", type=parse_range, default=parse_range("0..5"))
    tab.add_argument("--max-index", type=int, default=2)
    tab.add_argument("--s", type=parse_range, default=parse_range("0"))
    tab.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    if args.primes:
        primes = args.primes
    elif args.prime is not None:
        primes = (args.prime,)
    else:
        primes = (7,)
    return RunConfig(
        primes=primes,
        digits=args.digits,
        margin=args.margin,
        convention=getattr(args, "convention", "standard"),
        format=args.format,
        truncation_cap=args.truncation_cap,
        timing=args.timing,
    )


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns ``(exit code, output)``."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    if args.command == "tables":
        if args.what == "dwork" and args.prime is not None and args.prime < 2:
            raise UsageError("--prime must be a prime")
        report = cmd_tables(args.what, args)
        fmt = args.format
    else:
        cfg = _config_from(args)
        if args.command == "frobenius":
            report = cmd_frobenius(cfg)
        else:
            report = cmd_verify(cfg, args.suite, args.bruteforce_cutoff)
        if cfg.timing:
            report.wall_time = time.perf_counter() - start
        fmt = cfg.format
    text = report.to_json() if fmt == "json" else render_text(report)
    return (EXIT_OK if report.ok else EXIT_FAIL), text


def main(argv: list[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (MirrorPrimeError, PadicError, TruncationCapExceeded, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:
        # argparse usage errors exit with 2 already
        return int(exc.code or 0)
    print(text)
    return code
