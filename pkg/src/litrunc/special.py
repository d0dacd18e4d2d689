"""Special functions: the lower Lambert W branch, log-Gamma and factorial bounds.

Everything here is a pure function of its arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "WEval",
    "lambert_w_m1",
    "log_gamma",
    "factorial",
    "factorial_root_ratio",
    "robbins_bounds",
    "solve_linear_exponential",
    "E_PLUS",
]

INV_E = math.exp(-1.0)
W_TOL = 1e-14
W_MAX_STEPS = 50

# sqrt(2 pi) e^(1/12): the Robbins upper factor evaluated at z = 1.
E_PLUS = math.sqrt(2.0 * math.pi) * math.exp(1.0 / 12.0)


@dataclass(frozen=True)
class WEval:
    """A point on the lower branch together with its certificate ``w*e^w - t``."""

    t: float
    w: float
    residual: float
    iterations: int = 0


def _w_m1_guess(t: float) -> float:
    if t < -0.25:
        # Branch-point series; p < 0 selects the lower branch.
        p = -math.sqrt(max(0.0, 2.0 * (1.0 + math.e * t)))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    l1 = math.log(-t)
    l2 = math.log(-l1)
    return l1 - l2 + l2 / l1


def lambert_w_m1(t: float) -> WEval:
    """Solve ``w * exp(w) = t`` for ``w <= -1`` with ``-1/e <= t < 0``.

    Halley iteration from a branch-point series (t < -0.25) or the
    logarithmic asymptote (t >= -0.25), stopped once
    ``|w e^w - t| <= 1e-14 |t|``.
    """
    t = float(t)
    if not (-INV_E <= t < 0.0):
        # -1/e is not exactly representable; allow the rounding slack below it.
        if -INV_E * (1.0 + 4e-16) <= t < -INV_E:
            t = -INV_E
        else:
            raise DomainError(f"W_-1 is defined on [-1/e, 0), got t={t!r}")
    if t == -INV_E:
        return WEval(t, -1.0, -math.exp(-1.0) - t, 0)

    w = _w_m1_guess(t)
    steps = 0
    for steps in range(1, W_MAX_STEPS + 1):
        ew = math.exp(w)
        f = w * ew - t
        if abs(f) <= W_TOL * abs(t):
            break
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - step
        # Keep the iterate on the branch.
        if w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        if w_new == w:
            break
        w = w_new
    return WEval(t, w, w * math.exp(w) - t, steps)


# Lanczos approximation, g = 6.0246800407767296 with a 13-term rational sum
# scaled by exp(-g); coefficients as published for binary64 (Boost / Cephes).
_LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
_LANCZOS_DEN = (
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
)


def _lanczos_sum_expg_scaled(x: float) -> float:
    num = den = 0.0
    if x <= 1.0:
        for a, b in zip(_LANCZOS_NUM, _LANCZOS_DEN):
            num = num * x + a
            den = den * x + b
    else:
        z = 1.0 / x
        for a, b in zip(reversed(_LANCZOS_NUM), reversed(_LANCZOS_DEN)):
            num = num * z + a
            den = den * z + b
    return num / den


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    if x == 1.0 or x == 2.0:
        return 0.0
    zgh = x + _LANCZOS_G - 0.5
    return math.log(_lanczos_sum_expg_scaled(x)) + (x - 0.5) * (math.log(zgh) - 1.0)


def factorial(x: float) -> float:
    """Gamma(x + 1); overflows to ``inf`` rather than raising."""
    lg = log_gamma(x + 1.0)
    return math.exp(lg) if lg < 709.0 else math.inf


def factorial_root_ratio(x: float) -> float:
    """(x!)^(1/x) / x, which decreases from 1 at x = 1 towards 1/e."""
    if x < 1:
        raise DomainError(f"factorial_root_ratio needs x >= 1, got {x!r}")
    return math.exp(log_gamma(x + 1.0) / x) / x


def robbins_bounds(z: float) -> tuple[float, float]:
    """Robbins' lower and upper bounds on z!."""
    if z < 1:
        raise DomainError(f"robbins_bounds needs z >= 1, got {z!r}")
    base = 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(z) - z
    return (
        math.exp(base + 1.0 / (12.0 * z + 1.0)),
        math.exp(base + 1.0 / (12.0 * z)),
    )


def solve_linear_exponential(y: float, n: float) -> float:
    """Solve ``y = (x / (e ln n))**x`` for x on the lower W branch.

    Uses ``e^{W(z)} = z / W(z)`` to write the solution as
    ``ln(y) / W_-1(ln(y) / (e ln n))``.
    """
    if not (0.0 < y < 1.0):
        raise DomainError(f"need 0 < y < 1 for the lower-branch solution, got y={y!r}")
    if not n > 1:
        raise DomainError(f"need n > 1, got n={n!r}")
    ly = math.log(y)
    arg = ly / (math.e * math.log(n))
    return ly / lambert_w_m1(arg).w
