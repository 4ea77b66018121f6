"""Delta_3 against L_p(3, omega^-2)/3 for a list of primes.

    python scripts/delta3_table.py --primes 3,5,7,11,13,17,19 --digits 20
"""
import argparse
from dataclasses import dataclass

from quintic_frobenius.lfunction import compare_delta3
from quintic_frobenius.padic import Context, render_digits


@dataclass(frozen=True)
class Config:
    primes: tuple[int, ...] = (3, 5, 7, 11, 13)
    digits: int = 15
    margin: int = 10
    shown: int = 6


def main(cfg: Config) -> None:
    print(f"{'p':>3}  {'v':>3}  {'agreed':>6}  Delta_3 (first {cfg.shown} digits)")
    for p in cfg.primes:
        c = compare_delta3(Context(p, cfg.digits, cfg.margin))
        digits = render_digits(c.delta3, cfg.shown)
        flag = "  *" if c.caveat else ""
        print(f"{p:>3}  {c.delta3.valuation:>3}  {c.digits_agreed:>6}  {digits}{flag}")
    print("* omega^-2 is trivial at this prime")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="3,5,7,11,13")
    ap.add_argument("--digits", type=int, default=15)
    ap.add_argument("--margin", type=int, default=10)
    args = ap.parse_args()
    primes = tuple(int(x) for x in args.primes.split(","))
    main(Config(primes, args.digits, args.margin))
