"""Decide the h' normalization for odd k against the power-series oracle.

Only pairs whose odd-cusp j-range contains odd j can tell the two
conventions apart; a wrong choice shows up as a large imaginary part or a
stalled error.
"""

import mpmath as mp

from hilbexact.errors import RealnessError
from hilbexact.qseries import eta_product_series
from hilbexact.rademacher import EtaExponents, InverseConvention, truncated_sum

PAIRS = [(1, -2), (0, -2), (-16, -2), (-12, -4), (-20, -4)]


def main(N=60):
    for ab in PAIRS:
        e = EtaExponents(*ab)
        sensitive = any(j % 2 for j in e.odd_js())
        n = int(e.p0) + 2
        oracle = eta_product_series(*ab, n)[n]
        cells = []
        for conv in InverseConvention:
            try:
                err = abs(truncated_sum(e, n, N, convention=conv).value - oracle)
                cells.append(f"{conv.value}: {mp.nstr(err, 3)}")
            except RealnessError as exc:
                cells.append(f"{conv.value}: rejected ({exc})")
        print(f"{str(ab):10} n={n:<3} odd j at odd cusp={sensitive!s:5}  " + "  ".join(cells))


if __name__ == "__main__":
    main()
