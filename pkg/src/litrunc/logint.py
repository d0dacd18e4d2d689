"""The logarithmic integral and its interpolated asymptotic expansion.

All integrals over ``t`` are taken under ``t = e^u``, which turns
``dt / ln^{s}(t)`` into ``e^u u^{-s} du`` on ``[ln 2, ln n]``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

from scipy import integrate

from .errors import DomainError, QuadratureError
from .special import log_gamma

__all__ = [
    "ExpansionEval",
    "StieltjesPoint",
    "li2",
    "li",
    "li_expansion",
    "li_expansion_signed",
    "source_integral",
    "log_source_integral",
    "correction_factor",
    "sigma_tilde",
    "stieltjes_tau",
    "LI2_REFERENCE",
]

LI_RTOL = 1e-12
SOURCE_RTOL = 1e-11
QUAD_LIMIT = 200
LI2_REFERENCE = 1.04516
STIELTJES_MIN_N = math.exp(4.0 / 3.0)


@dataclass(frozen=True)
class ExpansionEval:
    n: float
    x: float
    value: float
    head_terms: int
    fractional_weight: float
    tail: float  # the fractional term n * floor(x)! * w / ln^{floor(x)+1} n


@dataclass(frozen=True)
class StieltjesPoint:
    n: float
    tau: float


def _quad(f, a, b, rtol, what):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err, info = integrate.quad(
            f, a, b, epsabs=0.0, epsrel=rtol, limit=QUAD_LIMIT, full_output=1
        )[:3]
    # QUADPACK's estimate is conservative; accept up to 100x the request.
    if not math.isfinite(val) or err > 100.0 * rtol * abs(val) + 1e-300:
        raise QuadratureError(
            f"{what}: quadrature reached only {err / max(abs(val), 1e-300):.2e} "
            f"relative (requested {rtol:.0e})",
            achieved=err,
        )
    return val


@lru_cache(maxsize=None)
def li2() -> float:
    """li(2) as the principal value of the integral of 1/ln t over [0, 2].

    With ``u = ln t`` the singularity sits at ``u = 0``; pairing ``+u`` and
    ``-u`` over ``[-ln 2, ln 2]`` leaves ``2 sinh(u)/u``, and the rest is the
    absolutely convergent ``int_{-inf}^{-ln 2} e^u/u du``.
    """
    a = math.log(2.0)
    sym = _quad(lambda u: 2.0 * math.sinh(u) / u if u else 2.0, 0.0, a, 1e-13, "li(2) core")
    left = _quad(lambda u: math.exp(u) / u, -math.inf, -a, 1e-13, "li(2) tail")
    value = sym + left
    assert abs(value - LI2_REFERENCE) < 1e-5
    return value


def _int_inv_log_power(n: float, s: float, rtol: float) -> tuple[float, float]:
    """Return ``(mantissa, log_scale)`` with the integral of dt/ln^s t over [2, n].

    The integral equals ``mantissa * exp(log_scale)``; the integrand is scaled
    by ``e^{-ln n}`` so large n cannot overflow.
    """
    a = math.log(2.0)
    b = math.log(n)
    if b <= a:
        raise DomainError(f"need n > 2, got {n!r}")
    if s == 1.0:
        f = lambda u: math.exp(u - b) / u
    else:
        f = lambda u: math.exp(u - b - s * math.log(u))
    return _quad(f, a, b, rtol, f"int_2^{n:g} dt/ln^{s:g} t"), b


def li(n: float, rtol: float = LI_RTOL) -> float:
    """The logarithmic integral, ``li(2) + int_2^n dt/ln t``, for n > 1."""
    n = float(n)
    if not n > 1.0:
        raise DomainError(f"li(n) needs n > 1, got {n!r}")
    if n == 2.0:
        return li2()
    if n < 2.0:
        val = _quad(lambda u: math.exp(u) / u, math.log(n), math.log(2.0), rtol, "li")
        return li2() - val
    m, scale = _int_inv_log_power(n, 1.0, rtol)
    return li2() + m * math.exp(scale)


def li_expansion(n: float, x: float) -> ExpansionEval:
    """Interpolated asymptotic expansion ``li(n; x)``.

    ``(n/L) sum_{k<floor(x)} k!/L^k`` plus the linear fractional term
    ``(x - floor(x)) floor(x)! n / L^{floor(x)+1}`` with ``L = ln n``.
    """
    n = float(n)
    x = float(x)
    if not n > 1.0:
        raise DomainError(f"li(n;x) needs n > 1, got n={n!r}")
    if not x >= 1.0:
        raise DomainError(f"li(n;x) needs x >= 1, got x={x!r}")
    L = math.log(n)
    k_max = math.floor(x)
    w = x - k_max
    terms = [1.0]
    t = 1.0
    for k in range(1, k_max):
        t *= k / L
        terms.append(t)
    head = math.fsum(terms)
    frac = w * t * k_max / L if w else 0.0
    scale = n / L
    return ExpansionEval(n, x, scale * (head + frac), k_max, w, scale * frac)


def li_expansion_signed(n: float, x: float) -> float:
    """Expansion with subtracted higher terms, used for 2 <= n < 11.

    ``(n/L)(1 - sum_{k=1}^{floor(x)-1} k!/L^k - fractional term)``; it
    decreases from n/ln n as x grows.
    """
    n = float(n)
    x = float(x)
    if not (2.0 <= n < 11.0):
        raise DomainError(f"signed expansion is defined for 2 <= n < 11, got n={n!r}")
    if not x >= 1.0:
        raise DomainError(f"need x >= 1, got x={x!r}")
    L = math.log(n)
    k_max = math.floor(x)
    w = x - k_max
    terms = []
    t = 1.0
    for k in range(1, k_max):
        t *= k / L
        terms.append(t)
    if w:
        terms.append(w * t * k_max / L)
    return n / L * (1.0 - math.fsum(terms))


def log_source_integral(n: float, x: float, rtol: float = SOURCE_RTOL) -> float:
    """``ln( Gamma(x+1) int_2^n dt / ln^{x+1} t )`` without the li(2) offset."""
    if not x >= 0.0:
        raise DomainError(f"need x >= 0, got x={x!r}")
    m, scale = _int_inv_log_power(float(n), x + 1.0, rtol)
    return log_gamma(x + 1.0) + math.log(m) + scale


def source_integral(n: float, x: float, rtol: float = SOURCE_RTOL) -> float:
    """``Gamma(x+1) int_2^n dt/ln^{x+1} t + li(2)``; equals li(n) at x = 0."""
    n = float(n)
    if not n > 2.0:
        raise DomainError(f"source_integral needs n > 2, got {n!r}")
    return math.exp(log_source_integral(n, x, rtol)) + li2()


def correction_factor(n: float, x: float) -> float:
    """Multiplicative factor C(n;x) = li(n;x) ln(n) / n; equals 1 at x = 1."""
    if n < 11:
        raise DomainError(f"correction_factor is used for n >= 11, got {n!r}")
    return li_expansion(n, x).value * math.log(n) / n


def sigma_tilde(n: float, x: float, rtol: float = SOURCE_RTOL) -> float:
    """Ratio of ``li(2) + int_2^n dt/ln^{x+1} t`` to its leading term ``n/ln^{x+1} n``."""
    n = float(n)
    if not n > 2.0:
        raise DomainError(f"sigma_tilde needs n > 2, got {n!r}")
    if not x >= 0.0:
        raise DomainError(f"need x >= 0, got x={x!r}")
    L = math.log(n)
    log_lead = L - (x + 1.0) * math.log(L)
    m, scale = _int_inv_log_power(n, x + 1.0, rtol)
    return m * math.exp(scale - log_lead) + li2() * math.exp(-log_lead)


def stieltjes_tau(n: float) -> StieltjesPoint:
    """Stieltjes truncation ``ln n - 1/3`` (first two terms), for n >= e^{4/3}."""
    n = float(n)
    if n < STIELTJES_MIN_N * (1.0 - 1e-15):
        raise DomainError(f"tau(n) < 1 below e^(4/3); got n={n!r}")
    return StieltjesPoint(n, math.log(n) - 1.0 / 3.0)
