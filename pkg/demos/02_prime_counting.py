"""Prime counting: sieve table, combinatorial counts and derived sums.

Run: python3 demos/02_prime_counting.py
"""
from litrunc.primes import PrimeTable, density, theta, prime_power_sum

table = PrimeTable()
for k in range(1, 11):
    print(f"pi(1e{k}) = {table.pi(10**k)}")

n = 10**6
print(f"theta(1e6) = {theta(n, table):.6f}")
pps = prime_power_sum(n, table)
print(f"sum_(r>=2) pi(n^(1/r))/r at 1e6 = {pps.value:.6f}")
print(f"density pi(n)/n at 1e6 = {density(n, table).d:.8f}")
