"""|a_N(α,β;n) - a(α,β;n)| over a grid of N, and the N needed for exact rounding.

    python scripts/convergence_study.py --n 6 --grid 2,5,10,20,40,75
"""

import argparse
import time

import mpmath as mp

from hilbexact.qseries import eta_product_series
from hilbexact.rademacher import EtaExponents, converge, truncated_sum

PAIRS = [(-1, 0), (0, -2), (1, -2), (-24, 0), (-8, -2)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--grid", default="2,5,10,20,40,75")
    ap.add_argument("--n-max", type=int, default=40, help="range for the exact-rounding sweep")
    args = ap.parse_args()
    grid = [int(x) for x in args.grid.split(",")]

    print(f"truncation error at n={args.n}")
    print("pair".ljust(10) + "".join(f"N={N}".rjust(12) for N in grid))
    for ab in PAIRS:
        oracle = eta_product_series(*ab, args.n)[args.n]
        errs = [abs(truncated_sum(ab, args.n, N).value - oracle) for N in grid]
        print(str(ab).ljust(10) + "".join(mp.nstr(e, 3).rjust(12) for e in errs))

    print(f"\nexact rounding for n <= {args.n_max}")
    for ab in PAIRS:
        e = EtaExponents(*ab)
        oracle = eta_product_series(*ab, args.n_max)
        t0 = time.perf_counter()
        Ns, ok = [], True
        for n in range(1, args.n_max + 1):
            if n > e.p0:
                value, rep = converge(e, n)
                Ns.append(rep.N)
                ok &= value == oracle[n]
        print(f"{str(ab):10} all exact={ok}  max N={max(Ns)}  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
