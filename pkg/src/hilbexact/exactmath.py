"""Exact rational arithmetic for the eta multiplier.

Rationals are :class:`fractions.Fraction`; phases exp(πi·e) are kept as a
rational exponent reduced mod 2 so that no rounding happens before the final
complex exponential inside a Kloosterman sum.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

import mpmath as mp

Rational = Fraction

__all__ = [
    "Rational",
    "UnitPhase",
    "sawtooth",
    "dedekind_sum",
    "dedekind_sum_fast",
    "omega",
]


def sawtooth(x):
    """((x)): 0 on integers, x - floor(x) - 1/2 otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return Fraction(0)
    return x - floor(x) - Fraction(1, 2)


@lru_cache(maxsize=None)
def dedekind_sum(h, k):
    """s(h, k) = sum_{r=1}^{k-1} ((r/k)) ((hr/k)), straight from the definition.

    Coprimality is not required. Works in integers scaled by (2k)^2:
    ((r/k)) = (2r - k) / 2k for 0 < r < k.
    """
    if k <= 0:
        raise ValueError(f"dedekind_sum needs k >= 1, got k={k}")
    h %= k
    total = 0
    for r in range(1, k):
        m = (h * r) % k
        if m:
            total += (2 * r - k) * (2 * m - k)
    return Fraction(total, 4 * k * k)


@lru_cache(maxsize=None)
def dedekind_sum_fast(h, k):
    """s(h, k) in O(log k) steps via reciprocity.

    Uses s(dh, dk) = s(h, k) to drop common factors, then alternates
    s(h, k) + s(k, h) = -1/4 + (h/k + k/h + 1/(hk)) / 12 with h -> k mod h.
    """
    if k <= 0:
        raise ValueError(f"dedekind_sum_fast needs k >= 1, got k={k}")
    h %= k
    g = gcd(h, k)
    h, k = h // g, k // g
    total = Fraction(0)
    sign = 1
    while h:
        total += sign * (Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k))
        sign = -sign
        h, k = k % h, h
    return total


@dataclass(frozen=True)
class UnitPhase:
    """The unit complex number exp(πi·exponent), exponent kept in [0, 2)."""

    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        e = Fraction(self.exponent)
        object.__setattr__(self, "exponent", e - 2 * floor(e / 2))

    def __mul__(self, other):
        if isinstance(other, UnitPhase):
            return UnitPhase(self.exponent + other.exponent)
        return NotImplemented

    def conjugate(self):
        return UnitPhase(-self.exponent)

    def __pow__(self, m):
        return UnitPhase(self.exponent * m)

    @classmethod
    def turns(cls, x):
        """exp(2πi·x)."""
        return cls(2 * Fraction(x))

    def value(self):
        """Complex value at the current mpmath precision."""
        e = self.exponent
        t = mp.mpf(e.numerator) / e.denominator
        return mp.mpc(mp.cospi(t), mp.sinpi(t))


def omega(alpha, beta, h, k):
    """ω_{α,β}(h, k) = exp(-πi(α s(h,k) + β s(2h,k))) for gcd(h, k) = 1."""
    if k <= 0:
        raise ValueError(f"omega needs k >= 1, got k={k}")
    if gcd(h, k) != 1:
        raise ValueError(f"omega needs gcd(h, k) = 1, got h={h}, k={k}")
    return UnitPhase(-(alpha * dedekind_sum_fast(h, k) + beta * dedekind_sum_fast(2 * h, k)))
