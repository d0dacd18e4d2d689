"""li(n) and its truncated asymptotic expansion li(n; x).

The expansion is divergent, so adding terms helps only up to the smallest
term; the Stieltjes point tau(n) sits there.

Run: python3 demos/03_logint_expansion.py
"""
import math

from litrunc.logint import li, li_expansion, stieltjes_tau

n = 1e9
exact = li(n)
print(f"li(1e9) = {exact:.6f}")
for x in (1, 2, 5, 10, 15, 20, 25, 30, 40):
    print(f"  x={x:3d}: li(n;x) - li(n) = {li_expansion(n, x).value - exact:+.6e}")

tau = stieltjes_tau(n).tau
print(f"tau(1e9) = {tau:.6f}, ln n = {math.log(n):.6f}")
print(f"error at tau, times ln^2 n: {(li_expansion(n, tau).value - exact) * math.log(n) ** 2:+.6f}")
