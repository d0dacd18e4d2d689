"""Truncation points of the li expansion: exact, average, closed-form and limit forms.

Every solver returns a :class:`TruncationSolution`.  Closed forms carry a
zero residual by construction.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

from scipy import integrate, optimize, special as sc

from .errors import DomainError, NoRootError
from .logint import (
    QUAD_LIMIT,
    li2,
    li_expansion,
    li_expansion_signed,
    log_source_integral,
    stieltjes_tau,
)
from .primes import PrimeTable, beta_n, default_table, density, prime_power_sum
from .special import lambert_w_m1, solve_linear_exponential

__all__ = [
    "Method",
    "LimitVariant",
    "TruncationSolution",
    "limit_coefficients",
    "exact_truncation",
    "avg_truncation",
    "avg_truncation_asymptotic",
    "avg_truncation_first_order",
    "limit_form",
]

X_TOL = 1e-10
MAX_TERMS = 10_000


class Method(enum.Enum):
    EXACT_PRIME = "ExactPrime"
    AVG_PRIME_INTEGRAL = "AvgPrimeIntegral"
    AVG_PRIME_ASYMPTOTIC = "AvgPrimeAsymptotic"
    CLOSED_FORM_W = "ClosedFormW"
    LIMIT_SIMPLE = "LimitSimple"
    LIMIT_LOGLOG = "LimitLogLog"


class LimitVariant(enum.Enum):
    SIMPLE = "Simple"
    LOGLOG = "LogLog"


@dataclass(frozen=True)
class TruncationSolution:
    n: float
    x: float
    constraint_v: float
    residual: float
    method: Method
    diagnostics: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def limit_coefficients() -> tuple[float, float]:
    """``(-1/2) / W_-1(-1/(2e))`` and ``-1 / W_-1(-1/(2e))``: about 0.186682 and 0.373365."""
    w = lambert_w_m1(-0.5 / math.e).w
    return -0.5 / w, -1.0 / w


def _invert_piecewise(n: float, target: float, signed: bool) -> float:
    """Invert x -> li(n;x) (or its signed variant), which is linear on each [k, k+1]."""
    L = math.log(n)
    scale = n / L
    head = scale  # value at x = 1
    term = 1.0  # k!/L^k for the current k
    for k in range(1, MAX_TERMS):
        term *= k / L
        step = scale * term
        nxt = head - step if signed else head + step
        lo, hi = (nxt, head) if signed else (head, nxt)
        if lo <= target <= hi:
            return k + abs(target - head) / step
        if not math.isfinite(nxt):
            break
        head = nxt
    raise NoRootError(
        f"no truncation below {MAX_TERMS} terms reaches pi(n)={target} at n={n}",
        {"n": n, "target": target, "last_value": head, "signed": signed},
    )


def exact_truncation(n: int, table: PrimeTable | None = None) -> TruncationSolution:
    """x with li(n; x) = pi(n).

    For 2 <= n < 11 with pi(n) <= n/ln n the subtracted-term expansion is
    inverted instead (``diagnostics['signed_regime']``).
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"exact_truncation needs n >= 2, got {n}")
    target = (table or default_table()).pi(n)
    L = math.log(n)
    signed = n < 11 and target <= n / L
    x = _invert_piecewise(n, target, signed)
    value = li_expansion_signed(n, x) if signed else li_expansion(n, x).value
    diag = {"signed_regime": signed}
    if n >= 11:
        diag["beyond_tau"] = x > stieltjes_tau(n).tau
    return TruncationSolution(n, x, float(target), abs(value - target), Method.EXACT_PRIME, diag)


def _dlog_source(n: float, x: float) -> float:
    """d/dx ln(Gamma(x+1) int_2^n dt/ln^{x+1} t)."""
    a, b = math.log(2.0), math.log(n)
    s = x + 1.0
    f0 = lambda u: math.exp(u - b - s * math.log(u))
    f1 = lambda u: math.log(u) * math.exp(u - b - s * math.log(u))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        i0 = integrate.quad(f0, a, b, epsabs=0.0, epsrel=1e-12, limit=QUAD_LIMIT)[0]
        i1 = integrate.quad(f1, a, b, epsabs=0.0, epsrel=1e-12, limit=QUAD_LIMIT)[0]
    return float(sc.digamma(s)) - i1 / i0


def source_minimum(n: float) -> float:
    """The x minimising the source integral at fixed n.

    ``ln(Gamma(x+1) int e^u u^{-(x+1)} du)`` is convex in x, so its
    derivative has a single zero.
    """
    hi = math.log(n) + 5.0
    lo = 0.0
    while _dlog_source(n, hi) < 0.0:
        hi *= 2.0
    return optimize.brentq(lambda x: _dlog_source(n, x), lo, hi, xtol=1e-12)


def avg_truncation(
    n: int, table: PrimeTable | None = None, strict: bool = False
) -> TruncationSolution:
    """x with prime_power_sum(n) = Gamma(x+1) int_2^n dt/ln^{x+1} t + li(2).

    The right side falls from li(n) at x = 0 to a minimum and rises again;
    the root is sought on the falling branch.  When the minimum already
    exceeds the prime-power sum no root exists and the closest approach,
    the minimiser itself, is returned with ``diagnostics['root'] = False``
    and the positive gap as residual (``strict=True`` raises instead).
    """
    n = int(n)
    if n < 4:
        raise DomainError(f"avg_truncation needs n >= 4, got {n}")
    target = prime_power_sum(n, table).value
    x_min = source_minimum(n)
    rhs = lambda x: math.exp(log_source_integral(n, x)) + li2()
    floor_value = rhs(x_min)
    diag = {"x_min": x_min, "min_value": floor_value}
    if floor_value > target:
        if strict:
            raise NoRootError(
                f"prime-power sum {target:.6g} is below the source integral's "
                f"minimum {floor_value:.6g} at n={n}",
                diag,
            )
        diag["root"] = False
        return TruncationSolution(
            n, x_min, target, floor_value - target, Method.AVG_PRIME_INTEGRAL, diag
        )
    x = optimize.brentq(lambda x: rhs(x) - target, 0.0, x_min, xtol=X_TOL)
    diag["root"] = True
    return TruncationSolution(n, x, target, abs(rhs(x) - target), Method.AVG_PRIME_INTEGRAL, diag)


def avg_truncation_asymptotic(n: int, table: PrimeTable | None = None) -> TruncationSolution:
    """Closed form ln(D_n) / W_-1(ln(D_n) / (e ln n)); defined from n = 9."""
    n = int(n)
    if n < 9:
        raise DomainError(f"the W_-1 closed form is undefined for n < 9, got {n}")
    d = density(n, table)
    x = solve_linear_exponential(d.d, n)
    return TruncationSolution(n, x, d.d * n, 0.0, Method.CLOSED_FORM_W, {"density": d.d})


def avg_truncation_first_order(n: int, table: PrimeTable | None = None) -> TruncationSolution:
    """((b - 1) ln n - ln ln n) / W_-1((b - 1)/e) with b = beta_n(n)."""
    n = int(n)
    if n < 4:
        raise DomainError(f"avg_truncation_first_order needs n >= 4, got {n}")
    b = beta_n(n)
    if not b < 1.0:
        raise DomainError(f"beta_n({n}) = {b} leaves the W_-1 domain")
    L = math.log(n)
    w = lambert_w_m1((b - 1.0) / math.e).w
    x = ((b - 1.0) * L - math.log(L)) / w
    return TruncationSolution(n, x, float("nan"), 0.0, Method.AVG_PRIME_ASYMPTOTIC, {"beta": b})


def limit_form(n: float, variant: LimitVariant | str = LimitVariant.LOGLOG) -> TruncationSolution:
    """c ln n (Simple) or c ln n + 2c ln ln n (LogLog), c = -1/(2 W_-1(-1/(2e)))."""
    variant = LimitVariant(variant)
    if not n > math.e:
        raise DomainError(f"limit_form needs n > e, got {n!r}")
    c, c2 = limit_coefficients()
    L = math.log(n)
    if variant is LimitVariant.SIMPLE:
        return TruncationSolution(n, c * L, float("nan"), 0.0, Method.LIMIT_SIMPLE)
    return TruncationSolution(n, c * L + c2 * math.log(L), float("nan"), 0.0, Method.LIMIT_LOGLOG)
