"""Randomised invariant checks behind ``litrunc verify``."""
from __future__ import annotations

import math

import numpy as np

from .bounds import DUSART_TABLE, f1, f1_envelope
from .logint import li, li_expansion, stieltjes_tau
from .primes import PrimeTable
from .riemann import riemann_r
from .solvers import avg_truncation, exact_truncation
from .special import solve_linear_exponential

DUSART_SIEVE_CAP = 10**7


def _trial_pi(m: int) -> int:
    return sum(1 for k in range(2, m + 1) if all(k % d for d in range(2, math.isqrt(k) + 1)))


def _log_sample(rng, lo, hi, size, integer=True):
    pts = np.exp(rng.uniform(math.log(lo), math.log(hi), size))
    return np.unique(pts.astype(np.int64) if integer else pts)


def run_checks(table: PrimeTable, seed: int = 0, grid: int = 200):
    rng = np.random.default_rng(seed)
    out = []

    ms = np.sort(rng.integers(0, 2000, size=min(grid, 50)))
    bad = [int(m) for m in ms if table.pi(int(m)) != _trial_pi(int(m))]
    out.append(("pi_vs_trial_division", not bad, f"{len(ms)} points, mismatches {bad[:3]}"))

    worst = 0.0
    for n in _log_sample(rng, 3, 1e15, grid):
        a, b = li(float(n)), li(float(n), rtol=1e-13)
        worst = max(worst, abs(a - b) / abs(b))
    out.append(("li_tolerance", worst <= 1e-9, f"max rel diff {worst:.2e}"))

    worst = 0.0
    for n, x in zip(_log_sample(rng, 16, 1e30, grid, integer=False), rng.uniform(1.0, 12.0, grid)):
        L = math.log(n)
        if x >= L:  # the lower branch returns the root below ln n
            continue
        y = (x / (math.e * L)) ** x
        worst = max(worst, abs(solve_linear_exponential(y, float(n)) - x) / x)
    out.append(("w_round_trip", worst <= 1e-10, f"max rel err {worst:.2e}"))

    worst = 0.0
    for n in _log_sample(rng, 2, 1e9, grid):
        s = exact_truncation(int(n), table)
        worst = max(worst, s.residual / s.constraint_v)
    out.append(("exact_forward_residual", worst <= 1e-9, f"max residual/pi {worst:.2e}"))

    worst = 0.0
    for n in _log_sample(rng, 4, 1e9, grid):
        n = float(n)
        e = abs(li(n) - li_expansion(n, stieltjes_tau(n).tau).value) * math.log(n) ** 2
        worst = max(worst, e)
    out.append(("stieltjes_envelope", worst < 0.5, f"max |li - li(n;tau)| ln^2 n = {worst:.3f}"))

    bad = [float(n) for n in _log_sample(rng, 2, 1e30, grid, integer=False) if not f1(n) <= f1_envelope(n)]
    out.append(("f1_robbins_envelope", not bad, f"violations {bad[:3]}"))

    bad = []
    for row in DUSART_TABLE:
        if row.n_k > DUSART_SIEVE_CAP:
            continue
        ns = _log_sample(rng, max(row.n_k, 2), DUSART_SIEVE_CAP, max(grid // 10, 5))
        th = table.theta_many(ns)
        for n, t in zip(ns, th):
            if not abs(t - n) < row.eta * n / math.log(n) ** row.k:
                bad.append((row.k, row.eta, int(n)))
    out.append(("dusart_theta", not bad, f"violations {bad[:3]}"))

    worst = 0.0
    for n in _log_sample(rng, 2, 1e9, max(grid // 4, 5)):
        n = float(n)
        worst = max(worst, abs(riemann_r(n, int(math.log2(n))) - riemann_r(n)))
    out.append(("riemann_r_tail", worst < 0.5, f"max |R_full - R_5| = {worst:.3f}"))

    ns = _log_sample(rng, 1e3, 1e6, max(grid // 4, 5))
    xs = [avg_truncation(int(n), table).x for n in ns]
    ok = all(b > a for a, b in zip(xs, xs[1:]))
    out.append(("avg_truncation_increasing", ok, f"{len(ns)} points on [1e3, 1e6]"))
    return out
