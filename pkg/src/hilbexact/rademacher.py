"""Kloosterman sums and the convergent series for a(α, β; n).

    a(α,β;n) = 2π Σ_{j<p0} Σ_{k even} A_k(α,β,j;n) a(α,β;j) k^{-(α+β)/2} L*(0,j,k;n)
             + 2π Σ_{j<p1} Σ_{k odd}  B_k(α,β,j;n) a(β,α;j) 2^{-β/2} k^{-(α+β)/2} L*(1,j,k;n)

with pole bounds p0 = -(α+2β)/24 and p1 = -(2α+β)/24, valid for α+β ≤ 0 and
n > p0. Terms are reduced in a fixed order (even block, then odd block,
ascending k, ascending j) so a run is bit-stable at fixed precision.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath as mp

from .errors import NonConvergenceError, PreconditionError, RealnessError
from .exactmath import UnitPhase, omega
from .qseries import eta_product_series
from .specfun import PrecisionContext, l_star, l_star_argument

__all__ = [
    "EtaExponents",
    "InverseConvention",
    "DEFAULT_CONVENTION",
    "RademacherReport",
    "Term",
    "inverse_neg_mod",
    "kloosterman_A",
    "kloosterman_B",
    "oracle_seeds",
    "truncated_sum",
    "exact_coefficient",
    "converge",
]


@dataclass(frozen=True)
class EtaExponents:
    alpha: int
    beta: int

    @property
    def p0(self):
        """Pole order at the cusp with even denominators."""
        return Fraction(-(self.alpha + 2 * self.beta), 24)

    @property
    def p1(self):
        """Bound on j for the cusp with odd denominators."""
        return Fraction(-(2 * self.alpha + self.beta), 24)

    def even_js(self):
        return range(0, math.ceil(self.p0)) if self.p0 > 0 else range(0)

    def odd_js(self):
        return range(0, math.ceil(self.p1)) if self.p1 > 0 else range(0)

    def check(self, n):
        if self.alpha + self.beta > 0:
            raise PreconditionError("α+β ≤ 0", f"α={self.alpha}, β={self.beta}")
        if not n > self.p0:
            raise PreconditionError("n > −(α+2β)/24", f"n={n}, bound={self.p0}")


class InverseConvention(str, enum.Enum):
    """How h' with hh' ≡ -1 (mod k) is normalized for odd k.

    ``canonical`` takes 0 ≤ h' < k; ``even`` takes the even representative in
    [0, 2k). Only the odd-cusp phase exp(πih'j/k) notices the difference.
    """

    CANONICAL = "canonical"
    EVEN = "even"


# Calibrated against the power-series oracle on pairs with odd j at the odd
# cusp, e.g. (α,β) = (-16,-2): even gives ~1e-18 error at N=60, while
# canonical leaves an imaginary part near 1e-9 (scripts/calibrate_convention.py).
DEFAULT_CONVENTION = InverseConvention.EVEN


def inverse_neg_mod(h, k, convention=InverseConvention.CANONICAL):
    """h' with h h' ≡ -1 (mod k), normalized per ``convention``.

    For even k every such h' is odd, so the even convention only applies to
    odd k and even k always gets the canonical representative.
    """
    convention = InverseConvention(convention)
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if gcd(h, k) != 1:
        raise ValueError(f"gcd(h, k) must be 1, got h={h}, k={k}")
    hp = (-pow(h, -1, k)) % k if k > 1 else 0
    if convention is InverseConvention.EVEN and k % 2 == 1 and hp % 2 == 1:
        hp += k
    return hp


@lru_cache(maxsize=None)
def _phase_table(alpha, beta, k, convention):
    """(h, h', ω exponent) for every unit h mod k."""
    rows = []
    for h in range(k):
        if gcd(h, k) == 1:
            hp = inverse_neg_mod(h, k, convention)
            rows.append((h, hp, omega(alpha, beta, h, k).exponent))
    return tuple(rows)


def _kloosterman(alpha, beta, j, n, k, convention, scale, ctx):
    total = mp.mpc(0)
    with ctx.workprec():
        for h, hp, w in _phase_table(alpha, beta, k, convention):
            # exponent in units of π: ω − 2nh/k + scale·h'j/k
            e = w + Fraction(-2 * n * h + scale * hp * j, k)
            total += UnitPhase(e).value()
    return total


def kloosterman_A(alpha, beta, j, n, k, ctx=PrecisionContext()):
    """A_k = Σ_h ω_{α,β}(h,k) exp(-2πinh/k + 2πih'j/k), k even."""
    if k < 2 or k % 2:
        raise ValueError(f"kloosterman_A needs even k >= 2, got {k}")
    return _kloosterman(alpha, beta, j, n, k, InverseConvention.CANONICAL, 2, ctx)


def kloosterman_B(alpha, beta, j, n, k, convention=DEFAULT_CONVENTION, ctx=PrecisionContext()):
    """B_k = Σ_h ω_{α,β}(h,k) exp(-2πinh/k + πih'j/k), k odd."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"kloosterman_B needs odd k >= 1, got {k}")
    return _kloosterman(alpha, beta, j, n, k, InverseConvention(convention), 1, ctx)


def oracle_seeds(alpha, beta, j):
    """a(α, β; j) from the exact power series."""
    return eta_product_series(alpha, beta, j)[j]


@dataclass(frozen=True)
class Term:
    parity: int
    j: int
    k: int
    contribution: mp.mpf


@dataclass
class RademacherReport:
    """Truncated exact-formula value with its per-(parity, j, k) breakdown.

    ``value`` is 2π times the sum of the term contributions.
    """

    alpha: int
    beta: int
    n: int
    N: int
    precision_bits: int
    convention: str
    value: mp.mpf
    terms: list = field(default_factory=list)
    seeds_used: dict = field(default_factory=dict)
    imag_part: mp.mpf = mp.mpf(0)

    def to_dict(self, digits=None):
        digits = digits or max(20, int(self.precision_bits * math.log10(2)))
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "n": self.n,
            "N": self.N,
            "precision_bits": self.precision_bits,
            "convention": self.convention,
            "value": decimal_string(self.value, digits),
            "terms": [
                {
                    "parity": t.parity,
                    "j": t.j,
                    "k": t.k,
                    "contribution": decimal_string(t.contribution, digits),
                }
                for t in self.terms
            ],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def decimal_string(x, digits=30):
    """Fixed-point decimal rendering with ``digits`` significant digits."""
    return mp.nstr(mp.mpf(x), digits, min_fixed=-mp.inf, max_fixed=mp.inf)


def _max_argument(exps, n, N):
    s = [0.0]
    if exps.even_js() and N >= 2:
        s.append(float(l_star_argument(0, 0, 2, n, exps.alpha, exps.beta)))
    if exps.odd_js():
        s.append(float(l_star_argument(1, 0, 1, n, exps.alpha, exps.beta)))
    return max(s)


def truncated_sum(exps, n, N, seeds=None, convention=DEFAULT_CONVENTION, ctx=None):
    """a_N(α, β; n): the exact formula with the k-sums cut at k ≤ N."""
    if not isinstance(exps, EtaExponents):
        exps = EtaExponents(*exps)
    exps.check(n)
    if N < 1:
        raise ValueError("N must be >= 1")
    seeds = seeds or oracle_seeds
    convention = InverseConvention(convention)
    ctx = (ctx or PrecisionContext()).raised_for(_max_argument(exps, n, N))
    a, b = exps.alpha, exps.beta
    seeds_used = {}
    terms = []
    re_total = mp.mpf(0)
    im_total = mp.mpf(0)
    abs_total = mp.mpf(0)
    with ctx.workprec():
        weight = Fraction(-(a + b), 2)
        wf = mp.mpf(weight.numerator) / weight.denominator
        odd_scale = mp.power(2, -mp.mpf(b) / 2)
        blocks = (
            (0, exps.even_js(), range(2, N + 1, 2), (a, b)),
            (1, exps.odd_js(), range(1, N + 1, 2), (b, a)),
        )
        for parity, js, ks, seed_key in blocks:
            for k in ks:
                for j in js:
                    seed = seeds(seed_key[0], seed_key[1], j)
                    seeds_used[(seed_key[0], seed_key[1], j)] = seed
                    if seed == 0:
                        continue
                    if parity == 0:
                        kl = kloosterman_A(a, b, j, n, k, ctx)
                        factor = mp.mpf(1)
                    else:
                        kl = kloosterman_B(a, b, j, n, k, convention, ctx)
                        factor = odd_scale
                    lst = l_star(parity, j, k, n, a, b, ctx)
                    c = kl * seed * factor * mp.power(k, wf) * lst
                    terms.append(Term(parity, j, k, c.real))
                    re_total += c.real
                    im_total += c.imag
                    abs_total += abs(c)
        value = 2 * mp.pi * re_total
        imag = 2 * mp.pi * im_total
        tol = mp.ldexp(1, -(ctx.working_bits // 2)) * max(mp.mpf(1), 2 * mp.pi * abs_total)
        if abs(imag) > tol:
            raise RealnessError(f"imaginary part {mp.nstr(imag, 5)} exceeds tolerance {mp.nstr(tol, 5)}")
    report = RademacherReport(
        alpha=a,
        beta=b,
        n=n,
        N=N,
        precision_bits=ctx.working_bits,
        convention=convention.value,
        value=value,
        terms=terms,
        seeds_used=seeds_used,
        imag_part=imag,
    )
    return report


def converge(exps, n, seeds=None, convention=DEFAULT_CONVENTION, ctx=None, round_margin=0.25, start_N=8, max_N=4096):
    """Double N until the truncations settle on an integer.

    Returns ``(integer, report)`` for the last truncation evaluated.
    """
    if not 0 < round_margin < 0.5:
        raise ValueError("round_margin must lie in (0, 1/2)")
    if not isinstance(exps, EtaExponents):
        exps = EtaExponents(*exps)
    exps.check(n)
    prev = truncated_sum(exps, n, start_N, seeds, convention, ctx)
    N = start_N
    while N < max_N:
        N *= 2
        cur = truncated_sum(exps, n, N, seeds, convention, ctx)
        # compare at the run's precision; 53 bits cannot hold large coefficients
        with mp.workprec(cur.precision_bits):
            nearest = mp.nint(cur.value)
            settled = abs(cur.value - prev.value) < round_margin and abs(cur.value - nearest) < round_margin
        if settled:
            return int(nearest), cur
        prev = cur
    raise NonConvergenceError(
        f"a({exps.alpha},{exps.beta};{n}) did not stabilize by N={max_N}", report=prev
    )


def exact_coefficient(exps, n, seeds=None, convention=DEFAULT_CONVENTION, ctx=None, round_margin=0.25, **kw):
    """a(α, β; n) as an exact integer from the convergent series."""
    value, _ = converge(exps, n, seeds, convention, ctx, round_margin, **kw)
    return value
