"""Certified digits of the six-fold first-row sum as the cutoff grows.

    python scripts/bruteforce_convergence.py -p 3 --cutoffs 20,30,40,50,60
"""
import argparse
import time
from dataclasses import dataclass

from quintic_frobenius.cohomology import first_row, first_row_bruteforce
from quintic_frobenius.padic import Context, is_zero_to


@dataclass(frozen=True)
class Config:
    p: int = 3
    cutoffs: tuple[int, ...] = (20, 30, 40, 50)


def main(cfg: Config) -> None:
    ctx = Context(cfg.p)
    row = first_row(ctx)
    print(f"p = {cfg.p}")
    print(f"{'cutoff':>6} {'digits':>6} {'tuples':>8} {'agree':>5} {'time':>7}")
    for cutoff in cfg.cutoffs:
        t0 = time.perf_counter()
        bf = first_row_bruteforce(ctx, cutoff)
        dt = time.perf_counter() - t0
        k = bf.certified_digits
        ok = k < 1 or all(is_zero_to(row[a] - bf.values[a], k) for a in range(4))
        print(f"{cutoff:>6} {k:>6} {bf.terms:>8} {str(ok):>5} {dt:>6.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-p", type=int, default=3)
    ap.add_argument("--cutoffs", default="20,30,40,50")
    a = ap.parse_args()
    main(Config(a.p, tuple(int(c) for c in a.cutoffs.split(","))))
