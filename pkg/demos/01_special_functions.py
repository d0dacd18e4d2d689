"""Lower-branch Lambert W, log-gamma and the factorial-root ratio.

Run: python3 demos/01_special_functions.py
"""
import math

from litrunc.solvers import limit_coefficients
from litrunc.special import factorial_root_ratio, lambert_w_m1, log_gamma

w = lambert_w_m1(-0.5 / math.e)
print(f"W_-1(-1/(2e)) = {w.w:.12f}  ({w.iterations} Halley steps)")
c, c2 = limit_coefficients()
print(f"c = {c:.12f}, 2c = {c2:.12f}")

# Lanczos log-gamma next to the stdlib value.
for x in (0.5, 3.7, 50.0, 1e6):
    print(f"lnGamma({x:g}) = {log_gamma(x):.15g}   math.lgamma: {math.lgamma(x):.15g}")

# (x!)^{1/x} / x tends to 1/e slowly.
for x in (5, 10, 150, 10_000):
    print(f"(x!)^(1/x)/x at x={x}: {factorial_root_ratio(x):.9f}")
print(f"1/e = {1 / math.e:.9f}")
