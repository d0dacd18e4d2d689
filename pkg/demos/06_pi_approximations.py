"""pi(n) against li(n), Riemann's R and the average-truncated expansion.

Run: python3 demos/06_pi_approximations.py
"""
from litrunc.logint import li, li_expansion
from litrunc.primes import PrimeTable
from litrunc.riemann import riemann_r
from litrunc.solvers import avg_truncation

table = PrimeTable()
print(f"{'n':>8} {'li':>11} {'R':>11} {'li(n;g)':>11}   (relative errors)")
for k in range(4, 11):
    n = 10**k
    p = table.pi(n)
    g = avg_truncation(n, table).x
    errs = [abs(v - p) / p for v in (li(n), riemann_r(n), li_expansion(n, g).value)]
    print(f"{'1e' + str(k):>8} " + " ".join(f"{e:11.3e}" for e in errs))
