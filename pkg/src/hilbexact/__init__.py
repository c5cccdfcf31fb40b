"""Exact formulas and oracles for invariants of Hilbert schemes of points.

Coefficients a(α, β; n) of prod (1 - q^m)^α (1 - q^{2m})^β are computed two
independent ways: exact integer power series (:mod:`hilbexact.qseries`) and a
Rademacher-type convergent series of Kloosterman sums times I-Bessel values
(:mod:`hilbexact.rademacher`).
"""

from .errors import (
    NoAsymptoticError,
    NonConvergenceError,
    PreconditionError,
    RealnessError,
    UnsupportedHypothesisError,
)
from .qseries import IntSeries, eta_product_series, goettsche_series, parity_sums, theta_ratios
from .rademacher import EtaExponents, InverseConvention, exact_coefficient, truncated_sum
from .specfun import PrecisionContext
from .surfaces import PRESETS, SurfaceHodge, euler_hilb, signature_hilb

__version__ = "0.1.0"
