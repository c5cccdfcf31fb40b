"""Exact-integer truncated q-series.

This is the oracle for every coefficient a(α, β; n) of
prod (1 - q^m)^α (1 - q^{2m})^β, the trivariate Göttsche product, and the
parity sums b*, c* built from its (±1, ±1) specializations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "IntSeries",
    "TriSeries",
    "ParitySums",
    "ThetaTable",
    "eta_product_series",
    "k3_euler_series",
    "goettsche_series",
    "z_specialized_series",
    "parity_sums",
    "chi_y_parity_sums",
    "theta_ratios",
]


@dataclass(frozen=True)
class IntSeries:
    """Power series sum coeffs[n] q^n known exactly up to q^order."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("IntSeries needs at least the constant term")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order):
        return IntSeries(self.coeffs[: order + 1])

    def _common(self, other):
        m = min(self.order, other.order)
        return self.coeffs[: m + 1], other.coeffs[: m + 1]

    def __add__(self, other):
        a, b = self._common(other)
        return IntSeries([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        a, b = self._common(other)
        return IntSeries([x - y for x, y in zip(a, b)])

    def __neg__(self):
        return IntSeries([-c for c in self.coeffs])

    def scale(self, c):
        return IntSeries([c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        a, b = self._common(other)
        out = [0] * len(a)
        for i, x in enumerate(a):
            if x:
                for j in range(len(a) - i):
                    out[i + j] += x * b[j]
        return IntSeries(out)

    __rmul__ = __mul__

    def reciprocal(self):
        """1/f, exact when the constant term is ±1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("reciprocal needs constant term ±1")
        out = [0] * len(self.coeffs)
        out[0] = c0
        for n in range(1, len(out)):
            s = sum(self.coeffs[i] * out[n - i] for i in range(1, n + 1))
            out[n] = -c0 * s
        return IntSeries(out)

    def __pow__(self, e):
        if e < 0:
            return self.reciprocal() ** (-e)
        result = IntSeries([1] + [0] * self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_json(self):
        """JSON array of decimal strings (big integers survive)."""
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text):
        return cls([int(s) for s in json.loads(text)])


def _binomial_series(e, length):
    """Coefficients of (1 - x)^e up to x^(length-1), any integer e."""
    out = [1]
    c = 1
    for i in range(length - 1):
        # c_{i+1} = c_i * (i - e) / (i + 1), exact
        c = c * (i - e) // (i + 1)
        out.append(c)
        if c == 0:
            break
    return out


def _times_power(coeffs, m, e):
    """In place: coeffs *= (1 - q^m)^e, truncated to len(coeffs)."""
    if e == 0:
        return
    order = len(coeffs) - 1
    binom = _binomial_series(e, order // m + 1)
    for n in range(order, 0, -1):
        acc = coeffs[n]
        i = 1
        while i < len(binom) and i * m <= n:
            if binom[i]:
                acc += binom[i] * coeffs[n - i * m]
            i += 1
        coeffs[n] = acc


def _eta_product_binomial(alpha, beta, order):
    coeffs = [1] + [0] * order
    for m in range(1, order + 1):
        _times_power(coeffs, m, alpha)
        if 2 * m <= order:
            _times_power(coeffs, 2 * m, beta)
    return coeffs


def _divisor_sums(order):
    sig = [0] * (order + 1)
    for d in range(1, order + 1):
        for m in range(d, order + 1, d):
            sig[m] += d
    return sig


def _eta_product_logderiv(alpha, beta, order):
    # q f'/f = sum_n c(n) q^n with c(n) = -α σ(n) - 2β σ(n/2)[2 | n]
    sig = _divisor_sums(order)
    c = [0] * (order + 1)
    for n in range(1, order + 1):
        c[n] = -alpha * sig[n]
        if n % 2 == 0:
            c[n] -= 2 * beta * sig[n // 2]
    a = [1] + [0] * order
    for n in range(1, order + 1):
        s = sum(c[i] * a[n - i] for i in range(1, n + 1))
        q, r = divmod(s, n)
        assert r == 0
        a[n] = q
    return a


@lru_cache(maxsize=256)
def eta_product_series(alpha, beta, order, method="binomial"):
    """Expansion of prod_{m>=1} (1 - q^m)^alpha (1 - q^{2m})^beta to q^order.

    Coefficient n is a(α, β; n). The q^{χ/24} prefactor of the eta quotient
    cancels the eta prefactors exactly, so no fractional powers appear.

    ``method`` is ``"binomial"`` (factor-by-factor accumulation) or
    ``"logderiv"`` (divisor-sum recurrence); both are exact.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if method == "binomial":
        return IntSeries(_eta_product_binomial(alpha, beta, order))
    if method == "logderiv":
        return IntSeries(_eta_product_logderiv(alpha, beta, order))
    raise ValueError(f"unknown method {method!r}")


def k3_euler_series(order):
    """sum chi(Hilb^n(K3)) q^n = prod (1 - q^n)^-24."""
    return eta_product_series(-24, 0, order)


class TriSeries:
    """Truncated series in q with Laurent polynomials in x, y as coefficients.

    Storage is dense: ``data[n][s + order][t + order]`` is the coefficient of
    x^s y^t q^n, with |s|, |t| <= order.
    """

    def __init__(self, order):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        w = 2 * order + 1
        self.data = [[[0] * w for _ in range(w)] for _ in range(order + 1)]
        self.data[0][order][order] = 1

    def coeff(self, s, t, n):
        if abs(s) > self.order or abs(t) > self.order:
            return 0
        return self.data[n][s + self.order][t + self.order]

    def laurent(self, n):
        """Nonzero terms of the q^n coefficient as {(s, t): c}."""
        o = self.order
        out = {}
        for i, row in enumerate(self.data[n]):
            for j, c in enumerate(row):
                if c:
                    out[(i - o, j - o)] = c
        return out

    def _apply(self, a, b, m, e):
        # multiply by (1 - x^a y^b q^m)^e in place, e = ±1
        o, w = self.order, 2 * self.order + 1
        rng = range(self.order, m - 1, -1) if e > 0 else range(m, self.order + 1)
        for n in rng:
            src, dst = self.data[n - m], self.data[n]
            for i in range(max(0, a), min(w, w + a)):
                srow, drow = src[i - a], dst[i]
                for j in range(max(0, b), min(w, w + b)):
                    c = srow[j - b]
                    if c:
                        if e > 0:
                            drow[j] -= c
                        else:
                            drow[j] += c

    def multiply_factor(self, a, b, m, e):
        """self *= (1 - x^a y^b q^m)^e for integer e."""
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            self._apply(a, b, m, step)

    def specialize(self, x_sign, y_sign):
        """Substitute x, y = ±1; returns the resulting IntSeries."""
        o = self.order
        out = []
        for n in range(o + 1):
            total = 0
            for i, row in enumerate(self.data[n]):
                sx = x_sign ** ((i - o) % 2)
                for j, c in enumerate(row):
                    if c:
                        total += c * sx * y_sign ** ((j - o) % 2)
            out.append(total)
        return IntSeries(out)

    def parity_class_sum(self, r1, r2):
        """sum_{t ≡ r1, s ≡ r2 (mod 2)} c(s, t; n) for each n (x^s y^t)."""
        o = self.order
        out = []
        for n in range(o + 1):
            total = 0
            for i, row in enumerate(self.data[n]):
                if (i - o - r2) % 2:
                    continue
                for j, c in enumerate(row):
                    if c and (j - o - r1) % 2 == 0:
                        total += c
            out.append(total)
        return IntSeries(out)

    def transformed(self, fn):
        """New TriSeries with coefficient (s, t) moved to fn(s, t)."""
        other = TriSeries(self.order)
        other.data[0][self.order][self.order] = 0
        for n in range(self.order + 1):
            for (s, t), c in self.laurent(n).items():
                s2, t2 = fn(s, t)
                other.data[n][s2 + self.order][t2 + self.order] += c
        return other

    def __eq__(self, other):
        return isinstance(other, TriSeries) and self.order == other.order and self.data == other.data


def goettsche_series(surface, order):
    """Göttsche's product for a connected surface, truncated at q^order.

    Numerator ((1-x^-1 q^m)(1-x q^m)(1-y^-1 q^m)(1-y q^m))^h10, denominator
    (1-x^-1 y^-1 q^m)(1-x y q^m)((1-x^-1 y q^m)(1-x y^-1 q^m))^h20 (1-q^m)^h11.
    """
    tri = TriSeries(order)
    h10, h20, h11 = surface.h10, surface.h20, surface.h11
    for m in range(1, order + 1):
        for a, b in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            tri.multiply_factor(a, b, m, h10)
        tri.multiply_factor(-1, -1, m, -1)
        tri.multiply_factor(1, 1, m, -1)
        tri.multiply_factor(-1, 1, m, -h20)
        tri.multiply_factor(1, -1, m, -h20)
        tri.multiply_factor(0, 0, m, -h11)
    return tri


def z_specialized_series(surface, x_sign, y_sign, order):
    """Z_S(x_sign, y_sign; q) as the eta product with exponents from the surface."""
    if x_sign not in (1, -1) or y_sign not in (1, -1):
        raise ValueError("x_sign and y_sign must be ±1")
    from .surfaces import specialization_exponents

    e = specialization_exponents(surface, x_sign, y_sign)
    return eta_product_series(e.alpha, e.beta, order)


@dataclass(frozen=True)
class ParitySums:
    """bstar[r][n] and cstar[r1][r2][n], exact integers."""

    bstar: tuple
    cstar: tuple

    @property
    def order(self):
        return len(self.bstar[0]) - 1


def _halve(values, d):
    out = []
    for v in values:
        q, r = divmod(v, d)
        if r:
            raise ArithmeticError(f"parity combination {v} not divisible by {d}")
        out.append(q)
    return tuple(out)


def parity_sums(surface, order):
    """b*(r; n) = ½(Z(1,1) + (-1)^r Z(1,-1)) and the four-term c*(r1, r2; n).

    c*(r1, r2) = ¼ sum_{j1, j2} (-1)^{j2 r2 + j1 r1} Z((-1)^{j2}, (-1)^{j1}).
    """
    z = {
        (x, y): z_specialized_series(surface, x, y, order).coeffs
        for x in (1, -1)
        for y in (1, -1)
    }
    bstar = tuple(
        _halve([a + (-1) ** r * b for a, b in zip(z[1, 1], z[1, -1])], 2) for r in (0, 1)
    )
    cstar = []
    for r1 in (0, 1):
        row = []
        for r2 in (0, 1):
            acc = [0] * (order + 1)
            for j1 in (0, 1):
                for j2 in (0, 1):
                    sgn = (-1) ** (j2 * r2 + j1 * r1)
                    zz = z[(-1) ** j2, (-1) ** j1]
                    for n in range(order + 1):
                        acc[n] += sgn * zz[n]
            row.append(_halve(acc, 4))
        cstar.append(tuple(row))
    return ParitySums(bstar=bstar, cstar=tuple(cstar))


def chi_y_parity_sums(surface, order):
    """Parity sums graded by the chi_y genus instead of the Z(1, ±1) identity.

    b(m; n) is the y^m coefficient of chi_y(Hilb^n), recovered from the
    trivariate expansion as (-1)^m sum_t c(m - n, t; n). Summing over both
    parities gives sigma(Hilb^n), not chi(Hilb^n); exposed for comparison
    with :func:`parity_sums` only.
    """
    tri = goettsche_series(surface, order)
    out = ([0] * (order + 1), [0] * (order + 1))
    for n in range(order + 1):
        for (s, _t), c in tri.laurent(n).items():
            m = s + n
            out[m % 2][n] += (-1) ** m * c
    return tuple(tuple(v) for v in out)


@dataclass
class ThetaTable:
    """Normalized parity ratios; ``None`` marks a zero denominator."""

    ns: Sequence[int]
    b: dict = field(default_factory=dict)  # n -> (Θ^0, Θ^1) or None
    c: dict = field(default_factory=dict)  # n -> {(r1, r2): Θ} or None

    def flagged(self):
        return sorted({n for n, v in self.b.items() if v is None} | {n for n, v in self.c.items() if v is None})


def theta_ratios(surface, order, ns=None):
    """Θ^r(n) = b*(r;n)/sum|b*| and Θ^{r1,r2}(n) = c*(r1,r2;n)/sum|c*| as Fractions."""
    ps = parity_sums(surface, order)
    ns = list(range(order + 1)) if ns is None else list(ns)
    table = ThetaTable(ns=ns)
    for n in ns:
        bs = [ps.bstar[r][n] for r in (0, 1)]
        den = sum(abs(v) for v in bs)
        table.b[n] = None if den == 0 else tuple(Fraction(v, den) for v in bs)
        cs = {(r1, r2): ps.cstar[r1][r2][n] for r1 in (0, 1) for r2 in (0, 1)}
        den = sum(abs(v) for v in cs.values())
        table.c[n] = None if den == 0 else {key: Fraction(v, den) for key, v in cs.items()}
    return table
