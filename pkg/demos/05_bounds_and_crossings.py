"""Truncation bound against the RH-conditional bound, and their crossings.

Run: python3 demos/05_bounds_and_crossings.py
"""
from litrunc.bounds import (
    CrossingPair,
    bound_constant,
    bound_series,
    envelope_constants,
    find_crossing,
    simplified_crossing_analytic,
    tail_integral,
)
from litrunc.primes import PrimeTable

table = PrimeTable()
print(f"tail integral = {tail_integral():.10f}, constant = {bound_constant():.10f}")
for k, v in envelope_constants().items():
    print(f"  {k:12s} {v:.10f}")
print(f"analytic crossing of the simplified forms: {simplified_crossing_analytic():.6e}")

for pair, rng in ((CrossingPair.TRUNC_AVG_VS_SCHOENFELD, (4, 50_000)),
                  (CrossingPair.TRUNC_LOGLOG_VS_SCHOENFELD, (4, 50_000)),
                  (CrossingPair.F1_VS_F2, (10**8, 10**14))):
    print(f"{pair.value}: last crossing near {find_crossing(pair, rng, table):.6g}")

s = bound_series([10**k for k in range(4, 13)], "ExactAvg", table)
for n, tb, sb in zip(s.grid, s.truncation_bound, s.schoenfeld_b):
    print(f"n=1e{len(str(n)) - 1}: truncation bound {tb:.4e}  RH bound {sb:.4e}")
