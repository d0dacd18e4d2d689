"""Bounds on the zeta-zero sum: the truncation bound against Schoenfeld's form.

The truncation bound for a truncation point x is

    (n / ln n) Gamma(x) / ln^{x-1} n - 0.553137

and the RH-conditional comparison bound is

    sqrt(n) ln n / (8 pi) + sum_{r>=2} pi(n^{1/r}) / r + 0.553137.

Both constants 0.553137 are the same number, ln 2 minus the integral of
dt / ((t^2 - 1) t ln t) over [2, inf), computed here by quadrature.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import DomainError, NoRootError
from .primes import PrimeTable, prime_power_sum
from .solvers import LimitVariant, avg_truncation, limit_coefficients, limit_form
from .special import E_PLUS, log_gamma

__all__ = [
    "DusartRow",
    "DUSART_TABLE",
    "BoundForm",
    "CrossingPair",
    "BoundSeries",
    "tail_integral",
    "bound_constant",
    "envelope_constants",
    "truncation_bound",
    "schoenfeld_b_bound",
    "f1",
    "f1_envelope",
    "f2",
    "find_crossing",
    "verify_double_bound",
    "simplified_crossing_analytic",
    "bound_series",
]

SCHOENFELD_MIN_N = 2657
TAIL_CUTOFF = 1e12


@dataclass(frozen=True)
class DusartRow:
    k: int
    eta: float
    n_k: int


# |theta(n) - n| < eta * n / ln^k n for n >= n_k (Dusart).
DUSART_TABLE = (
    DusartRow(0, 1.0, 1),
    DusartRow(1, 1.2323, 2),
    DusartRow(1, 0.001, 908_994_923),
    DusartRow(2, 3.965, 2),
    DusartRow(2, 0.2, 3_594_641),
    DusartRow(2, 0.05, 122_568_683),
    DusartRow(2, 0.01, 7_713_133_853),
    DusartRow(3, 20.83, 2),
    DusartRow(3, 10.0, 32_321),
    DusartRow(3, 1.0, 89_967_803),
    DusartRow(3, 0.78, 158_822_621),
    DusartRow(4, 1300.0, 2),
)


class BoundForm(enum.Enum):
    SIMPLE = "Simple"
    LOGLOG = "LogLog"
    EXACT_AVG = "ExactAvg"


# Smallest n at which each double bound is claimed.
FORM_THRESHOLDS = {
    BoundForm.SIMPLE: 1_500_000_000_000,
    BoundForm.LOGLOG: 33_520,
    BoundForm.EXACT_AVG: 6_063,
}


class CrossingPair(enum.Enum):
    F1_VS_F2 = "F1VsF2"
    TRUNC_AVG_VS_SCHOENFELD = "TruncAvgVsSchoenfeld"
    TRUNC_LOGLOG_VS_SCHOENFELD = "TruncLogLogVsSchoenfeld"


@dataclass
class BoundSeries:
    grid: list[int]
    truncation_bound: list[float]
    schoenfeld_b: list[float]
    f1: list[float]
    f2: list[float]
    crossings: list[tuple[float, str]] = field(default_factory=list)


@lru_cache(maxsize=None)
def tail_integral() -> float:
    """int_2^inf dt / ((t^2 - 1) t ln t), about 0.140010.

    Quadrature in u = ln t up to t = 1e12, plus the leading tail term
    1 / (2 T^2 ln T) beyond the cutoff T.
    """
    a, b = math.log(2.0), math.log(TAIL_CUTOFF)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        body = integrate.quad(
            lambda u: 1.0 / (math.expm1(2.0 * u) * u), a, b, epsabs=0.0, epsrel=1e-13, limit=200
        )[0]
    return body + 1.0 / (2.0 * TAIL_CUTOFF**2 * b)


@lru_cache(maxsize=None)
def bound_constant() -> float:
    """ln 2 - tail_integral(), about 0.553137."""
    return math.log(2.0) - tail_integral()


@lru_cache(maxsize=None)
def envelope_constants() -> dict[str, float]:
    """Constants of the Robbins envelope for f1 and its simplified crossing."""
    c = limit_coefficients()[0]
    amp = E_PLUS * math.e / math.sqrt(c)
    base = c**c
    return {
        "c": c,
        "exponent": 1.0 - c,  # 0.8133177
        "amplitude": amp,  # 17.14052
        "base": base,  # 0.7310176
        "log_base": math.log(base),  # -0.3133177, equal to c - 1/2
        "log_amp_8pi": math.log(amp * 8.0 * math.pi),  # 6.065617
    }


def truncation_bound(n: float, x: float) -> float:
    """(n / ln n) Gamma(x) / ln^{x-1} n - 0.553137, built in log space."""
    if not n > 1:
        raise DomainError(f"truncation_bound needs n > 1, got {n!r}")
    if not x > 0:
        raise DomainError(f"truncation_bound needs x > 0, got x={x!r}")
    L = math.log(n)
    lnL = math.log(L)
    return math.exp(L - lnL + log_gamma(x) - (x - 1.0) * lnL) - bound_constant()


def f2(n: int, table: PrimeTable | None = None) -> float:
    """sqrt(n) ln n / (8 pi) + prime_power_sum(n) + 0.553137, for any n >= 2."""
    n = int(n)
    if n < 2:
        raise DomainError(f"f2 needs n >= 2, got {n}")
    lead = math.sqrt(n) * math.log(n) / (8.0 * math.pi)
    return lead + prime_power_sum(n, table).value + bound_constant()


def schoenfeld_b_bound(n: int, table: PrimeTable | None = None) -> float:
    """The RH-conditional bound; asserted only from n = 2657."""
    if int(n) < SCHOENFELD_MIN_N:
        raise DomainError(f"the Schoenfeld bound holds from n = {SCHOENFELD_MIN_N}, got {n}")
    return f2(n, table)


def f1(n: float) -> float:
    """truncation_bound at x = c ln n, c = 0.1866823."""
    if not n >= 2:
        raise DomainError(f"f1 needs n >= 2, got {n!r}")
    return truncation_bound(n, limit_coefficients()[0] * math.log(n))


def f1_envelope(n: float) -> float:
    """n^{1-c} A B^{ln n} / sqrt(ln n) - 0.553137 with A = 17.14052, B = 0.7310176."""
    if not n > 1:
        raise DomainError(f"f1_envelope needs n > 1, got {n!r}")
    k = envelope_constants()
    L = math.log(n)
    log_val = k["exponent"] * L + math.log(k["amplitude"]) + k["log_base"] * L - 0.5 * math.log(L)
    return math.exp(log_val) - bound_constant()


def simplified_crossing_analytic() -> float:
    """exp(exp(6.065617 / 1.5)), where (3/2) ln ln n = ln(17.14052 * 8 pi)."""
    return math.exp(math.exp(envelope_constants()["log_amp_8pi"] / 1.5))


def _truncation_x(n: int, form: BoundForm, table: PrimeTable | None) -> float:
    if form is BoundForm.EXACT_AVG:
        return avg_truncation(n, table).x
    return limit_form(n, LimitVariant(form.value)).x


def _difference(pair: CrossingPair, n: int, table: PrimeTable | None) -> float:
    """Lower-side bound minus upper-side bound; negative once the claim holds."""
    if pair is CrossingPair.F1_VS_F2:
        return f1(n) - f2(n, table)
    form = BoundForm.EXACT_AVG if pair is CrossingPair.TRUNC_AVG_VS_SCHOENFELD else BoundForm.LOGLOG
    return truncation_bound(n, _truncation_x(n, form, table)) - f2(n, table)


def find_crossing(
    pair: CrossingPair | str,
    search_range: tuple[int, int],
    table: PrimeTable | None = None,
    scan_points: int = 65,
) -> float:
    """Last n in the range where the named difference changes sign.

    A log-spaced scan picks the highest bracketing pair of grid points,
    integer bisection narrows it to consecutive integers, and the crossing
    is interpolated linearly between them.
    """
    pair = CrossingPair(pair)
    lo, hi = int(search_range[0]), int(search_range[1])
    if not 2 <= lo < hi:
        raise DomainError(f"need 2 <= lo < hi, got {search_range!r}")
    grid = np.unique(np.geomspace(lo, hi, scan_points).round().astype(np.int64))
    grid[0], grid[-1] = lo, hi
    vals = [_difference(pair, int(m), table) for m in grid]
    a = b = None
    for i in range(len(grid) - 1, 0, -1):
        if (vals[i - 1] > 0) != (vals[i] > 0):
            a, b = int(grid[i - 1]), int(grid[i])
            da, db = vals[i - 1], vals[i]
            break
    if a is None:
        raise NoRootError(
            f"{pair.value}: no sign change on [{lo}, {hi}]",
            {"lo": lo, "hi": hi, "d_lo": vals[0], "d_hi": vals[-1]},
        )
    while b - a > 1:
        m = int(round(math.sqrt(a) * math.sqrt(b)))
        m = min(max(m, a + 1), b - 1)
        dm = _difference(pair, m, table)
        if (dm > 0) == (da > 0):
            a, da = m, dm
        else:
            b, db = m, dm
    return a + da / (da - db)


def verify_double_bound(n: int, form: BoundForm | str, table: PrimeTable | None = None) -> bool:
    """True when truncation_bound(n, x_form) < f2(n); only asked from the form's threshold."""
    form = BoundForm(form)
    n = int(n)
    if n < FORM_THRESHOLDS[form]:
        raise DomainError(
            f"the {form.value} double bound is claimed from n = {FORM_THRESHOLDS[form]}, got {n}"
        )
    return truncation_bound(n, _truncation_x(n, form, table)) < f2(n, table)


def bound_series(grid, form: BoundForm | str = BoundForm.EXACT_AVG, table=None) -> BoundSeries:
    """Evaluate both sides of the chosen double bound plus f1 and f2 on a grid."""
    form = BoundForm(form)
    grid = [int(m) for m in grid]
    tb, sb, g1, g2 = [], [], [], []
    for m in grid:
        upper = f2(m, table)
        tb.append(truncation_bound(m, _truncation_x(m, form, table)))
        sb.append(upper if m >= SCHOENFELD_MIN_N else math.nan)
        g1.append(f1(m))
        g2.append(upper)
    out = BoundSeries(grid, tb, sb, g1, g2)
    for i in range(1, len(grid)):
        da, db = tb[i - 1] - g2[i - 1], tb[i] - g2[i]
        if (da > 0) != (db > 0):
            out.crossings.append((grid[i - 1] + da / (da - db) * (grid[i] - grid[i - 1]), form.value))
    return out
