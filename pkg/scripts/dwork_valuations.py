"""Valuations of the Dwork exponential coefficients next to the two floors.

``v(B_n)`` goes negative quickly; the bound n(p-1)/p^2 only holds after
multiplying by pi^n.  The last column is the slack over the floor for B_n.
"""
import argparse
from dataclasses import dataclass

from quintic_frobenius.dwork import coefficient_floor, dwork_coefficients, valuation_floor
from quintic_frobenius.padic import vp_rational


@dataclass(frozen=True)
class Config:
    p: int = 3
    n_max: int = 300
    step: int = 25


def main(cfg: Config) -> None:
    table = dwork_coefficients(cfg.p, cfg.n_max)
    print(f"p = {cfg.p}")
    print(f"{'n':>5} {'v(B_n)':>7} {'n(p-1)/p^2':>11} {'floor(B_n)':>11} {'slack':>7}")
    worst = None
    for n in range(cfg.n_max + 1):
        v = vp_rational(table[n], cfg.p)
        slack = v - coefficient_floor(n, cfg.p)
        if worst is None or slack < worst[1]:
            worst = (n, slack)
        if n % cfg.step == 0:
            print(
                f"{n:>5} {v:>7} {float(valuation_floor(n, cfg.p)):>11.2f} "
                f"{float(coefficient_floor(n, cfg.p)):>11.2f} {float(slack):>7.2f}"
            )
    print(f"smallest slack {float(worst[1]):.3f} at n = {worst[0]}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-p", type=int, default=3)
    ap.add_argument("-n", type=int, default=300)
    ap.add_argument("--step", type=int, default=25)
    a = ap.parse_args()
    main(Config(a.p, a.n, a.step))
