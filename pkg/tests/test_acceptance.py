"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict that the conftest hook prints
in the terminal summary. Tolerances and time limits are fixed here.
"""

import time
from decimal import ROUND_DOWN
from fractions import Fraction
from math import gcd

import mpmath as mp
import pytest

from hilbexact.exactmath import dedekind_sum
from hilbexact.qseries import eta_product_series, goettsche_series, parity_sums, theta_ratios
from hilbexact.rademacher import EtaExponents, exact_coefficient, kloosterman_A, truncated_sum
from hilbexact.specfun import PrecisionContext, bessel_i, l_star
from hilbexact.surfaces import PRESETS, euler_hilb, signature_hilb, surface_asymptotics
from hilbexact.tables import THETA_NS, build_table, matches_printed, render_decimal

VERDICTS = {}

TABLE1 = [
    ["1.0029", "2.0808", "2.9340", "5.0296", "7.0278", "10.9325"],
    ["0", "2.1281", "0", "4.8883", "0", "10.1650"],
    ["-0.8747", "1.3314", "-1.9544", "2.7902", "-3.8958", "5.3410"],
]
TABLE2 = [
    ["0.9999", "2.0005", "2.9999", "4.9999", "6.9999", "10.9999"],
    ["0.0001", "1.9999", "-0.0002", "5.0001", "-0.0000", "9.9999"],
    ["-1.0004", "1.0003", "-2.0000", "3.0005", "-3.9994", "5.0003"],
]
TABLE4 = [
    ["0.5714", "0.5054", "0.4977", "0.4993", "0.5000"],
    ["-0.4285", "-0.4946", "-0.5023", "-0.5006", "-0.5000"],
]
TABLE5 = [
    ["0.2505", "0.2500", "0.2500", "0.2500", "0.2500"],
    ["-0.2499", "-0.2499", "-0.2500", "-0.2500", "-0.2500"],
    ["-0.2499", "-0.2499", "-0.2500", "-0.2500", "-0.2500"],
    ["0.2495", "0.2499", "0.2499", "0.2499", "0.2499"],
]
FIVE_PAIRS = [(-1, 0), (0, -2), (1, -2), (-24, 0), (-8, -2)]

LIMIT_T1 = 1.0
LIMIT_T2 = 30.0
LIMIT_ORACLE_EQ = 300.0
LIMIT_THETA = 1.0
LIMIT_SERIES_500 = 10.0
ASYMPTOTIC_TOL = 0.05
BESSEL_REL = mp.mpf(2) ** -120


def record(number, ok, detail):
    VERDICTS[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(VERDICTS[number])
    assert ok, VERDICTS[number]


def _table_check(number, printed, limit):
    t0 = time.perf_counter()
    table = build_table(number)
    elapsed = time.perf_counter() - t0
    values = [v for _, row in table.rows for v in row]
    flat = [p for row in printed for p in row]
    agree = [matches_printed(v, p) for v, p in zip(values, flat)]
    strict = sum(render_decimal(v, len(p.split(".")[1]) if "." in p else 0, ROUND_DOWN) == p or
                 (p.lstrip("-") == "0" and abs(v) < mp.mpf(10) ** -20)
                 for v, p in zip(values, flat))
    misses = [p for p, ok in zip(flat, agree) if not ok]
    ok = all(agree) and len(values) == 18 and elapsed < limit
    detail = (f"{sum(agree)}/18 entries agree with the printed digits (truncated or rounded), "
              f"{strict}/18 under truncation alone; {elapsed:.2f}s (limit {limit:.0f}s)")
    if misses:
        detail += f"; mismatches {misses}"
    return ok, detail


def test_criterion_1_table_one():
    record(1, *_table_check(1, TABLE1, LIMIT_T1))


def test_criterion_2_table_two():
    record(2, *_table_check(2, TABLE2, LIMIT_T2))


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for ab in FIVE_PAIRS:
        e = EtaExponents(*ab)
        oracle = eta_product_series(*ab, 40)
        for n in range(1, 41):
            if n > e.p0:
                checked += 1
                got = exact_coefficient(e, n)
                if got != oracle[n]:
                    bad.append((ab, n, got, oracle[n]))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < LIMIT_ORACLE_EQ
    record(3, ok, f"{checked - len(bad)}/{checked} coefficients exact; {elapsed:.1f}s (limit 300s)"
           + (f"; first mismatch {bad[0]}" if bad else ""))


def test_criterion_4_theta_tables():
    t0 = time.perf_counter()
    theta = theta_ratios(PRESETS["c2p1_blowup2"], max(THETA_NS), THETA_NS)
    elapsed = time.perf_counter() - t0
    got = [[theta.b[n][r] for n in THETA_NS] for r in (0, 1)]
    got += [[theta.c[n][key] for n in THETA_NS] for key in ((0, 0), (0, 1), (1, 0), (1, 1))]
    printed = TABLE4 + TABLE5
    truncated = sum(render_decimal(v, 4) == p for row, prow in zip(got, printed) for v, p in zip(row, prow))
    agree = sum(matches_printed(v, p) for row, prow in zip(got, printed) for v, p in zip(row, prow))
    ok = agree == 30 and elapsed < LIMIT_THETA
    record(4, ok, f"{agree}/30 Θ entries agree with the printed digits ({truncated}/30 by truncation); "
           f"{elapsed:.2f}s (limit 1s)")


def test_criterion_5_asymptotic_trend():
    t0 = time.perf_counter()
    eta_product_series.cache_clear()
    eta_product_series(-24, 0, 500)
    eta_product_series(1, -2, 500)
    series_time = time.perf_counter() - t0
    parts, ok = [], series_time < LIMIT_SERIES_500
    for name, inv, fn in (("k3", "euler", euler_hilb), ("p2", "signature", signature_hilb)):
        s = PRESETS[name]
        devs = [abs(mp.mpf(fn(s, n)) / surface_asymptotics(s, inv, n) - 1) for n in (100, 200, 500)]
        decreasing = devs[0] > devs[1] > devs[2]
        small = devs[2] < ASYMPTOTIC_TOL
        ok = ok and decreasing and small
        parts.append(f"{name} {inv} |ratio-1| at 100/200/500 = "
                     + "/".join(mp.nstr(d, 4) for d in devs)
                     + f" (decreasing={decreasing}, <0.05 at 500={small})")
    record(5, ok, "; ".join(parts) + f"; order-500 series {series_time:.2f}s")


def test_criterion_6_invariant_suites():
    failures = []
    # Dedekind sums
    for k in range(1, 201):
        for h in range(k):
            if gcd(h, k) != 1:
                continue
            s = dedekind_sum(h, k)
            if dedekind_sum(k - h, k) != -s or (12 * k * s).denominator != 1:
                failures.append(("dedekind", h, k))
            if 0 < h < k:
                rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
                if s + dedekind_sum(k, h) != rhs:
                    failures.append(("reciprocity", h, k))
    # Kloosterman sums
    ctx = PrecisionContext(128)
    tiny = mp.mpf(2) ** (-ctx.working_bits + 16)
    for ab in FIVE_PAIRS:
        for k in range(2, 101, 2):
            phi = sum(1 for h in range(k) if gcd(h, k) == 1)
            a = kloosterman_A(*ab, 0, 5, k, ctx)
            if abs(a.imag) > tiny * k or abs(a) > phi + tiny * k:
                failures.append(("kloosterman", ab, k))
        for n in range(4):
            for j in range(3):
                if abs(kloosterman_A(*ab, j, n, 2, ctx) - (-1) ** (n + j)) > tiny:
                    failures.append(("A2", ab, n, j))
    # half-integer Bessel closed forms
    with mp.workprec(160):
        for i in range(41):
            x = mp.mpf(1) / 10 + i * mp.mpf(5)
            ref = mp.sqrt(2 / (mp.pi * x)) * mp.sinh(x)
            ref3 = mp.sqrt(2 / (mp.pi * x)) * (mp.cosh(x) - mp.sinh(x) / x)
            if abs(bessel_i(Fraction(1, 2), x, ctx) / ref - 1) > BESSEL_REL:
                failures.append(("I_1/2", x))
            if abs(bessel_i(Fraction(3, 2), x, ctx) / ref3 - 1) > BESSEL_REL:
                failures.append(("I_3/2", x))
    # parity of a(0, β; n)
    for beta in (-2, -3, -5, 4):
        full, half = eta_product_series(0, beta, 200), eta_product_series(beta, 0, 100)
        if any(full[2 * n + 1] for n in range(100)) or any(full[2 * n] != half[n] for n in range(101)):
            failures.append(("parity", beta))
    # trivariate symmetries and the c* combination, h10 > 0
    surface = PRESETS["abelian_blowup1"]
    tri = goettsche_series(surface, 8)
    for fn in (lambda s, t: (-s, t), lambda s, t: (s, -t), lambda s, t: (t, s)):
        if tri.transformed(fn) != tri:
            failures.append(("symmetry",))
    ps = parity_sums(surface, 8)
    for r1 in (0, 1):
        for r2 in (0, 1):
            if list(ps.cstar[r1][r2]) != list(tri.parity_class_sum(r1, r2)):
                failures.append(("cstar", r1, r2))
    # merged-sum identity at β = 0
    for j, k in ((0, 3), (1, 5), (2, 7)):
        a = l_star(1, 2 * j, k, 9, -72, 0, ctx)
        b = l_star(0, j, k, 9, -72, 0, ctx)
        if abs(a / b - 1) > BESSEL_REL:
            failures.append(("lstar", j, k))
    record(6, not failures, "all invariant families hold" if not failures else f"failures: {failures[:5]}")


def test_criterion_7_monotone_truncation_error():
    grid = (5, 10, 20, 40, 75)
    offenders, lines = [], []
    for ab in FIVE_PAIRS:
        oracle = eta_product_series(*ab, 6)[6]
        errs = [abs(truncated_sum(ab, 6, N).value - oracle) for N in grid]
        if any(b > a for a, b in zip(errs, errs[1:])):
            offenders.append(ab)
        lines.append(f"{ab}: " + ", ".join(mp.nstr(e, 3) for e in errs))
    record(7, not offenders, f"non-increasing over N={grid} fails for {offenders}; errors " + "; ".join(lines)
           if offenders else "errors non-increasing for all five pairs")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
