"""Where to cut the expansion so it reproduces pi(n).

Run: python3 demos/04_truncation_points.py
"""
from litrunc.primes import PrimeTable
from litrunc.solvers import (
    avg_truncation,
    avg_truncation_asymptotic,
    avg_truncation_first_order,
    exact_truncation,
    limit_form,
)

table = PrimeTable()
print(f"{'n':>12} {'exact':>9} {'average':>9} {'W form':>9} {'first':>9} {'LogLog':>9} {'Simple':>9}")
for n in (1_000, 10_000, 88_783, 10**6, 10**8, 10**10):
    row = [
        exact_truncation(n, table).x,
        avg_truncation(n, table).x,
        avg_truncation_asymptotic(n, table).x,
        avg_truncation_first_order(n, table).x,
        limit_form(n, "LogLog").x,
        limit_form(n, "Simple").x,
    ]
    print(f"{n:>12} " + " ".join(f"{v:9.4f}" for v in row))

# The exact truncation steps up only at primes.
prev = exact_truncation(96, table).x
for n in range(97, 110):
    g = exact_truncation(n, table).x
    print(f"n={n}: g={g:.6f} {'up' if g > prev else 'down'}")
    prev = g

sol = avg_truncation(10**6, table)
print("average-method diagnostics at 1e6:", sol.diagnostics)
