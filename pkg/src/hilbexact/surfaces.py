"""Surface-level invariants of Hilbert schemes of points.

A connected smooth projective surface enters only through (h10, h20, h11).
Its Euler characteristics and signatures of Hilb^n come from two eta
products, each computed by the oracle or by the convergent series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .errors import NoAsymptoticError, PreconditionError, UnsupportedHypothesisError
from .qseries import eta_product_series, theta_ratios
from .rademacher import DEFAULT_CONVENTION, EtaExponents, converge
from .specfun import PrecisionContext

__all__ = [
    "SurfaceHodge",
    "PRESETS",
    "surface_from_spec",
    "specialization_exponents",
    "euler_hilb",
    "signature_hilb",
    "asymptotic_estimate",
    "surface_asymptotics",
    "EquidistributionReport",
    "equidistribution_report",
]


@dataclass(frozen=True)
class SurfaceHodge:
    h10: int
    h20: int
    h11: int
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        if self.h10 < 0 or self.h20 < 0 or self.h11 < 1:
            raise ValueError(f"need h10, h20 >= 0 and h11 >= 1, got {(self.h10, self.h20, self.h11)}")
        # χ + σ = 4 - 4h10 + 4h20 keeps Λ and Λ' integral
        assert (self.chi + self.sigma) % 2 == 0

    @property
    def chi(self):
        return 2 - 4 * self.h10 + 2 * self.h20 + self.h11

    @property
    def sigma(self):
        return 2 * self.h20 + 2 - self.h11

    @property
    def lam(self):
        """Λ = -(σ + χ)/2."""
        return -(self.sigma + self.chi) // 2

    @property
    def lam_prime(self):
        """Λ' = (σ - χ)/2."""
        return (self.sigma - self.chi) // 2

    def spec(self):
        return self.name if self.name in PRESETS else f"custom:{self.h10},{self.h20},{self.h11}"


PRESETS = {
    "k3": SurfaceHodge(0, 1, 20, "k3"),
    "p2": SurfaceHodge(0, 0, 1, "p2"),
    "hirzebruch0": SurfaceHodge(0, 0, 2, "hirzebruch0"),
    "abelian_blowup1": SurfaceHodge(2, 1, 5, "abelian_blowup1"),
    "c2p1_blowup2": SurfaceHodge(2, 0, 4, "c2p1_blowup2"),
    "enriques": SurfaceHodge(0, 0, 10, "enriques"),
}


def surface_from_spec(text):
    """A preset name or ``custom:h10,h20,h11``."""
    if text in PRESETS:
        return PRESETS[text]
    if text.startswith("custom:"):
        parts = text[len("custom:"):].split(",")
        if len(parts) != 3:
            raise ValueError(f"custom surface needs three integers, got {text!r}")
        return SurfaceHodge(*(int(p) for p in parts))
    raise ValueError(f"unknown surface {text!r}; presets: {', '.join(PRESETS)}")


def specialization_exponents(surface, x_sign, y_sign):
    """(α, β) with Z_S(x, y; q) = prod (1-q^m)^α (1-q^{2m})^β for x, y = ±1."""
    if x_sign not in (1, -1) or y_sign not in (1, -1):
        raise ValueError("signs must be ±1")
    if x_sign == 1 and y_sign == 1:
        return EtaExponents(-surface.chi, 0)
    if x_sign == -1 and y_sign == -1:
        # from direct substitution into the product; the variant with the
        # two eta factors swapped does not match it
        return EtaExponents(-(surface.chi + 8 * surface.h10), 4 * surface.h10)
    return EtaExponents(surface.sigma, surface.lam)


def _coefficient(exps, n, method, ctx, convention, round_margin):
    if method == "oracle":
        return eta_product_series(exps.alpha, exps.beta, n)[n], None
    if method == "exact":
        value, report = converge(exps, n, convention=convention, ctx=ctx, round_margin=round_margin)
        return value, report
    raise ValueError(f"method must be 'exact' or 'oracle', got {method!r}")


def euler_hilb(surface, n, method="oracle", ctx=None, convention=DEFAULT_CONVENTION, round_margin=0.25, with_report=False):
    """χ(Hilb^n(S)) = a(-χ(S), 0; n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    exps = specialization_exponents(surface, 1, 1)
    if n == 0:
        value, report = 1, None
    else:
        if method == "exact" and not 0 <= surface.chi < 24 * n:
            raise PreconditionError("0 ≤ χ(S) < 24n", f"χ(S)={surface.chi}, n={n}")
        value, report = _coefficient(exps, n, method, ctx, convention, round_margin)
    return (value, report) if with_report else value


def signature_hilb(surface, n, method="oracle", ctx=None, convention=DEFAULT_CONVENTION, round_margin=0.25, with_report=False):
    """σ(Hilb^n(S)) = (-1)^n a(σ(S), Λ(S); n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    exps = specialization_exponents(surface, -1, 1)
    if n == 0:
        value, report = 1, None
    else:
        if method == "exact" and not surface.sigma <= surface.chi < 24 * n:
            raise PreconditionError("σ(S) ≤ χ(S) < 24n", f"σ(S)={surface.sigma}, χ(S)={surface.chi}, n={n}")
        value, report = _coefficient(exps, n, method, ctx, convention, round_margin)
        value = (-1) ** n * value
    return (value, report) if with_report else value


def _r(x):
    return mp.mpf(Fraction(x).numerator) / Fraction(x).denominator


def asymptotic_estimate(exps, n, ctx=PrecisionContext()):
    """Leading closed-form growth of a(α, β; n) as n → ∞.

    Three regimes: α = 0 (even n only, odd coefficients vanish), α < 0, and
    α > 0 (alternating sign).
    """
    if not isinstance(exps, EtaExponents):
        exps = EtaExponents(*exps)
    a, b = exps.alpha, exps.beta
    if a + b > 0:
        raise PreconditionError("α+β ≤ 0", f"α={a}, β={b}")
    if a == 0 and b == 0:
        raise NoAsymptoticError("a(0, 0; n) is constant")
    if n < 1:
        raise ValueError("n must be >= 1")
    with ctx.workprec():
        two, three, pi = mp.mpf(2), mp.mpf(3), mp.pi
        if a == 0:
            if n % 2:
                return mp.mpf(0)
            m = n // 2
            return (
                two ** _r(Fraction(3 * b - 5, 4))
                * three ** _r(Fraction(b - 1, 4))
                * mp.mpf(-b) ** _r(Fraction(1 - b, 4))
                * mp.mpf(m) ** _r(Fraction(b - 3, 4))
                * mp.exp(pi * mp.sqrt(mp.mpf(-2 * b) / 3 * m))
            )
        if a < 0:
            return (
                two ** _r(Fraction(2 * a + b - 3, 2))
                * three ** _r(Fraction(a + b - 1, 4))
                * mp.mpf(-(2 * a + b)) ** _r(Fraction(-a - b + 1, 4))
                * mp.mpf(n) ** _r(Fraction(a + b - 3, 4))
                * mp.exp(pi * mp.sqrt(mp.mpf(-(2 * a + b)) / 3 * n))
            )
        return (
            (-1) ** n
            * two ** _r(Fraction(3 * a + 3 * b - 7, 4))
            * three ** _r(Fraction(a + b - 1, 4))
            * mp.mpf(-(a + 2 * b)) ** _r(Fraction(1 - a - b, 4))
            * mp.mpf(n) ** _r(Fraction(a + b - 3, 4))
            * mp.exp(pi * mp.sqrt(mp.mpf(-(a + 2 * b)) / 6 * n))
        )


def surface_asymptotics(surface, invariant, n, ctx=PrecisionContext()):
    """Closed-form asymptotic of χ(Hilb^n(S)) or σ(Hilb^n(S)).

    For σ(S) = 0 ≠ χ(S) the signature formula is stated for σ(Hilb^{2m});
    pass the full index n = 2m. Odd n returns exact 0 there.
    """
    chi, sig = surface.chi, surface.sigma
    if n < 1:
        raise ValueError("n must be >= 1")
    with ctx.workprec():
        two, three, pi = mp.mpf(2), mp.mpf(3), mp.pi
        if invariant == "euler":
            if chi > 0:
                return (
                    two ** _r(Fraction(-3 * chi - 5, 4))
                    * three ** _r(Fraction(-chi - 1, 4))
                    * mp.mpf(chi) ** _r(Fraction(chi + 1, 4))
                    * mp.mpf(n) ** _r(Fraction(-chi - 3, 4))
                    * mp.exp(pi * mp.sqrt(mp.mpf(2 * chi) / 3 * n))
                )
            if chi == 0:
                return mp.mpf(0)
            raise UnsupportedHypothesisError(f"no Euler characteristic asymptotic for χ(S)={chi} < 0")
        if invariant != "signature":
            raise ValueError(f"invariant must be 'euler' or 'signature', got {invariant!r}")
        if chi < sig:
            raise UnsupportedHypothesisError(f"signature asymptotics need χ(S) ≥ σ(S), got χ={chi}, σ={sig}")
        if sig < 0:
            return (
                (-1) ** n
                * two ** _r(Fraction(7 * sig - 3 * chi - 14, 8))
                * three ** _r(Fraction(sig - chi - 2, 8))
                * mp.mpf(chi - 3 * sig) ** _r(Fraction(chi - sig + 2, 8))
                * mp.mpf(n) ** _r(Fraction(sig - chi - 6, 8))
                * mp.exp(pi * mp.sqrt(mp.mpf(chi - 3 * sig) / 6 * n))
            )
        if sig > 0:
            return (
                two ** _r(Fraction(3 * sig - 3 * chi - 14, 8))
                * three ** _r(Fraction(sig - chi - 2, 8))
                * mp.mpf(chi) ** _r(Fraction(chi - sig + 2, 8))
                * mp.mpf(n) ** _r(Fraction(sig - chi - 6, 8))
                * mp.exp(pi * mp.sqrt(mp.mpf(chi) / 6 * n))
            )
        if chi != 0:
            if n % 2:
                return mp.mpf(0)
            m = n // 2
            return (
                two ** _r(Fraction(-chi - 3, 2))
                * three ** _r(Fraction(-chi - 2, 8))
                * mp.mpf(chi) ** _r(Fraction(2 + chi, 8))
                * mp.mpf(m) ** _r(Fraction(-chi - 6, 8))
                * mp.exp(pi * mp.sqrt(mp.mpf(chi) / 3 * m))
            )
        return mp.mpf(0)


@dataclass
class EquidistributionReport:
    surface: SurfaceHodge
    ns: list
    theta: object
    b_limit: tuple
    c_limit: dict
    b_case: str
    c_case: str
    b_deviation: object
    c_deviation: object
    notes: list


def equidistribution_report(surface, n_max, ns=None):
    """Θ tables with the limits predicted for the surface's parity sums.

    b*: χ+σ > 0 gives (½, ½), χ+σ = 0 gives (1, 0) with b*(1; n) = 0 exactly,
    χ+σ < 0 gives (½, -½). c*: h10 = 0 gives (½, 0, 0, ½) with the mixed
    classes exactly zero, h10 > 0 gives (¼, -¼, -¼, ¼) in (00, 01, 10, 11).
    """
    chi, sig = surface.chi, surface.sigma
    if chi < sig:
        raise UnsupportedHypothesisError(f"equidistribution needs χ(S) ≥ σ(S), got χ={chi}, σ={sig}")
    if chi == 0 and sig == 0:
        raise UnsupportedHypothesisError("χ(S) = σ(S) = 0: all parity sums vanish for n ≥ 1")
    ns = list(range(1, n_max + 1)) if ns is None else list(ns)
    theta = theta_ratios(surface, max(ns), ns)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    if chi + sig > 0:
        b_case, b_limit = "χ+σ > 0: b*(0;n) ~ b*(1;n)", (half, half)
    elif chi + sig == 0:
        b_case, b_limit = "χ+σ = 0: b*(1;n) = 0", (Fraction(1), Fraction(0))
    else:
        b_case, b_limit = "χ+σ < 0: b*(0;n) ~ -b*(1;n)", (half, -half)
    if surface.h10 == 0:
        c_case = "h10 = 0: c*(0,0;n) ~ c*(1,1;n), c*(0,1;n) = c*(1,0;n) = 0"
        c_limit = {(0, 0): half, (0, 1): Fraction(0), (1, 0): Fraction(0), (1, 1): half}
    else:
        c_case = "h10 > 0: c*(0,0;n) ~ c*(1,1;n) ~ -c*(0,1;n) = -c*(1,0;n)"
        c_limit = {(0, 0): quarter, (0, 1): -quarter, (1, 0): -quarter, (1, 1): quarter}
    last = ns[-1]
    bl, cl = theta.b[last], theta.c[last]
    b_dev = None if bl is None else max(abs(x - y) for x, y in zip(bl, b_limit))
    c_dev = None if cl is None else max(abs(cl[key] - c_limit[key]) for key in c_limit)
    notes = [
        "the mixed classes satisfy c*(0,1;n) = c*(1,0;n) by the x<->y symmetry of the product.",
        "b* is the Z(1,1) ± Z(1,-1) combination; the chi_y-graded variant sums to σ(Hilb^n) instead.",
    ]
    return EquidistributionReport(
        surface=surface,
        ns=ns,
        theta=theta,
        b_limit=b_limit,
        c_limit=c_limit,
        b_case=b_case,
        c_case=c_case,
        b_deviation=b_dev,
        c_deviation=c_dev,
        notes=notes,
    )
