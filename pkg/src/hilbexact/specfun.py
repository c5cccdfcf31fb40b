"""High-precision Gamma at half-integers, I-Bessel by its power series, and L*.

All real arithmetic goes through mpmath at a fixed binary precision taken from
a :class:`PrecisionContext`.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import mpmath as mp

from .errors import PreconditionError

__all__ = [
    "PrecisionContext",
    "bessel_order",
    "gamma_half_integer",
    "bessel_i",
    "l_star_brackets",
    "l_star",
]

DEFAULT_BITS = 128
# spare bits on top of the e^x dynamic range of a run
MARGIN_BITS = 64


@dataclass(frozen=True)
class PrecisionContext:
    working_bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.working_bits < 53:
            raise ValueError("working_bits must be >= 53")

    @classmethod
    def for_argument(cls, max_x, base_bits=DEFAULT_BITS):
        """Context able to resolve integers next to values of size e^max_x."""
        need = math.ceil(float(max_x) * math.log2(math.e)) + MARGIN_BITS
        return cls(max(base_bits, need))

    def raised_for(self, max_x):
        return PrecisionContext.for_argument(max_x, self.working_bits)

    def workprec(self):
        return mp.workprec(self.working_bits)

    @property
    def eps(self):
        return mp.ldexp(1, -self.working_bits)


def bessel_order(alpha, beta):
    """v = 1 - (α + β)/2, an integer or half-integer."""
    return 1 - Fraction(alpha + beta, 2)


def gamma_half_integer(twice_x, ctx=PrecisionContext()):
    """Γ(twice_x / 2) from Γ(1/2) = √π, Γ(1) = 1 and Γ(x + 1) = xΓ(x)."""
    if twice_x < 1:
        raise ValueError(f"gamma_half_integer needs a positive argument, got {twice_x}/2")
    with ctx.workprec():
        if twice_x % 2 == 0:
            return mp.mpf(math.factorial(twice_x // 2 - 1))
        # Γ(m + 1/2) = (2m)! / (4^m m!) √π
        m = twice_x // 2
        num = math.factorial(2 * m)
        den = 4**m * math.factorial(m)
        return mp.mpf(num) / den * mp.sqrt(mp.pi)


def bessel_i(v, x, ctx=PrecisionContext()):
    """I_v(x) from (x/2)^v sum_k (x²/4)^k / (k! Γ(v + k + 1)).

    ``v`` must be a non-negative integer or half-integer. All terms are
    positive for x > 0, so the partial sums never cancel.
    """
    v = Fraction(v)
    if v < 0 or (2 * v).denominator != 1:
        raise ValueError(f"bessel_i supports non-negative (half-)integer order, got {v}")
    guard = 16
    with mp.workprec(ctx.working_bits + guard):
        x = mp.mpf(x)
        if x < 0:
            raise ValueError("bessel_i needs x >= 0")
        if x == 0:
            result = mp.mpf(1) if v == 0 else mp.mpf(0)
        else:
            vf = mp.mpf(v.numerator) / v.denominator
            z2 = x * x / 4
            g = gamma_half_integer(int(2 * v) + 2, PrecisionContext(ctx.working_bits + guard))
            term = 1 / g
            total = term
            tol = mp.ldexp(1, -(ctx.working_bits + guard))
            k = 0
            while True:
                k += 1
                term = term * z2 / (k * (vf + k))
                total += term
                # past the peak the terms shrink geometrically
                if k > x and term < tol * total:
                    break
            result = (x / 2) ** vf * total
    with ctx.workprec():
        return +result


def l_star_brackets(parity, j, k, n, alpha, beta):
    """The two bracket factors of L*, as exact rationals times π.

    parity 0: [-(α+2β)/(12k²) - 2j/k²] π;  parity 1: [-(2α+β)/(24k²) - j/k²] π.
    The second bracket is [(α+2β)/12 + 2n] π for both.
    """
    if parity == 0:
        first = Fraction(-(alpha + 2 * beta), 12 * k * k) - Fraction(2 * j, k * k)
    elif parity == 1:
        first = Fraction(-(2 * alpha + beta), 24 * k * k) - Fraction(j, k * k)
    else:
        raise ValueError(f"parity must be 0 or 1, got {parity}")
    second = Fraction(alpha + 2 * beta, 12) + 2 * n
    return first, second


def _mpq(q):
    return mp.mpf(q.numerator) / q.denominator


def l_star_argument(parity, j, k, n, alpha, beta, ctx=PrecisionContext()):
    """Bessel argument s = 2 sqrt(first bracket * second bracket)."""
    first, second = l_star_brackets(parity, j, k, n, alpha, beta)
    with ctx.workprec():
        return 2 * mp.pi * mp.sqrt(_mpq(first * second))


def l_star(parity, j, k, n, alpha, beta, ctx=PrecisionContext()):
    """L*(parity, j, k; n) = B1^{1/2-(α+β)/4} B2^{-1/2+(α+β)/4} I_v(2 sqrt(B1 B2))."""
    first, second = l_star_brackets(parity, j, k, n, alpha, beta)
    if first <= 0:
        bound = "j < -(α+2β)/24" if parity == 0 else "j < -(2α+β)/24"
        raise PreconditionError(bound, f"parity={parity}, j={j}, k={k}, α={alpha}, β={beta}")
    if second <= 0:
        raise PreconditionError("n > -(α+2β)/24", f"n={n}, α={alpha}, β={beta}")
    e = Fraction(1, 2) - Fraction(alpha + beta, 4)
    v = bessel_order(alpha, beta)
    with mp.workprec(ctx.working_bits + 16):
        b1 = mp.pi * _mpq(first)
        b2 = mp.pi * _mpq(second)
        s = 2 * mp.sqrt(b1 * b2)
        bes = bessel_i(v, s, PrecisionContext(ctx.working_bits + 16))
        ef = _mpq(e)
        val = (b1 / b2) ** ef * bes
    with ctx.workprec():
        return +val
