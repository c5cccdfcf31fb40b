"""Numerical tables: truncated exact-formula values and parity ratios.

Tables 1 and 2 list a_N(α, β; n) for n = 1..6 at N = 2 and N = 75, one row
per surface: χ(Hilb^n) of a blown-up abelian surface (α, β) = (-1, 0), and
(-1)^n σ(Hilb^n) of P^1 x P^1 (0, -2) and of P^2 (1, -2). Tables 4 and 5 list
Θ ratios of C_2 x P^1 blown up twice at n = 5, 10, ..., 25.
"""

from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal

import mpmath as mp

from .qseries import theta_ratios
from .rademacher import DEFAULT_CONVENTION, truncated_sum
from .surfaces import PRESETS, specialization_exponents

__all__ = ["Table", "TABLE_ROWS", "build_table", "render_decimal", "truncate", "matches_printed"]

TABLE_ROWS = (
    ("abelian_blowup1", "euler", "a_N(-1,0;n)"),
    ("hirzebruch0", "signature", "a_N(0,-2;n)"),
    ("p2", "signature", "a_N(1,-2;n)"),
)
THETA_NS = (5, 10, 15, 20, 25)


@dataclass
class Table:
    number: int
    caption: str
    columns: list
    rows: list  # (label, [values]); values are mpf or Fraction
    header: str = ""


def render_decimal(x, places=4, rounding=ROUND_DOWN):
    """Fixed decimal string with ``places`` digits, truncated by default."""
    if not isinstance(x, Decimal):
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            x = Decimal(x.numerator) / Decimal(x.denominator)
        else:
            x = Decimal(mp.nstr(mp.mpf(x), 40, min_fixed=-mp.inf, max_fixed=mp.inf))
    out = x.quantize(Decimal(1).scaleb(-places), rounding=rounding)
    if out == 0:
        out = abs(out)
    return f"{out:f}"


def truncate(x, places=4):
    return render_decimal(x, places, ROUND_DOWN)


def matches_printed(x, printed):
    """True if ``printed`` is a fixed-decimal rendering of ``x``.

    The printed tables mix truncated and rounded renderings, so both the
    truncation and the rounding of ``x`` to the printed number of places are
    accepted.
    """
    places = len(printed.split(".")[1]) if "." in printed else 0
    target = Decimal(printed)
    for mode in (ROUND_DOWN, ROUND_HALF_EVEN):
        if Decimal(render_decimal(x, places, mode)) == target:
            return True
    return False


def rendering_mode(x, printed):
    """'trunc', 'round', 'both' or None for how ``printed`` renders ``x``."""
    places = len(printed.split(".")[1]) if "." in printed else 0
    target = Decimal(printed)
    t = Decimal(render_decimal(x, places, ROUND_DOWN)) == target
    r = Decimal(render_decimal(x, places, ROUND_HALF_EVEN)) == target
    return {(True, True): "both", (True, False): "trunc", (False, True): "round"}.get((t, r))


def _rademacher_table(number, N, convention, ctx):
    rows = []
    for preset, invariant, label in TABLE_ROWS:
        surface = PRESETS[preset]
        exps = specialization_exponents(surface, 1, 1) if invariant == "euler" else specialization_exponents(surface, -1, 1)
        values = [truncated_sum(exps, n, N, convention=convention, ctx=ctx).value for n in range(1, 7)]
        rows.append((f"{label.replace('N', str(N))} [{preset}, {invariant}]", values))
    return Table(
        number=number,
        caption=f"Approximate values of the exact formula, N={N}",
        columns=list(range(1, 7)),
        rows=rows,
        header="rows: abelian surface blown up once (χ=1), P1xP1 (σ=0, χ=4), P2 (σ=1, χ=3)",
    )


def _theta_table(number):
    surface = PRESETS["c2p1_blowup2"]
    theta = theta_ratios(surface, max(THETA_NS), THETA_NS)
    if number == 4:
        rows = [(f"Theta^{r}(n)", [theta.b[n][r] for n in THETA_NS]) for r in (0, 1)]
        caption = "Comparative asymptotic properties of b*(r;n), C2xP1 blown up twice"
    else:
        rows = [
            (f"Theta^{r1},{r2}(n)", [theta.c[n][(r1, r2)] for n in THETA_NS])
            for r1 in (0, 1)
            for r2 in (0, 1)
        ]
        caption = "Comparative asymptotic properties of c*(r1,r2;n), C2xP1 blown up twice"
    return Table(number=number, caption=caption, columns=list(THETA_NS), rows=rows,
                 header="surface: c2p1_blowup2 (h10=2, h20=0, h11=4)")


def build_table(number, convention=DEFAULT_CONVENTION, ctx=None):
    if number == 1:
        return _rademacher_table(1, 2, convention, ctx)
    if number == 2:
        return _rademacher_table(2, 75, convention, ctx)
    if number in (4, 5):
        return _theta_table(number)
    raise ValueError(f"table must be one of 1, 2, 4, 5; got {number}")
