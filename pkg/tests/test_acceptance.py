"""Acceptance criteria, one test each; every test reports a PASS/FAIL line.

The lines are repeated in the "acceptance criteria" section of the pytest
terminal summary.
"""
import math
import time

import numpy as np
import pytest

from litrunc.bounds import (
    CrossingPair,
    bound_constant,
    envelope_constants,
    find_crossing,
    schoenfeld_b_bound,
    simplified_crossing_analytic,
    tail_integral,
    truncation_bound,
)
from litrunc.cli import load_figure, run_sweep
from litrunc.logint import li, li_expansion, stieltjes_tau
from litrunc.riemann import riemann_r
from litrunc.solvers import avg_truncation, exact_truncation, limit_coefficients, limit_form
from litrunc.special import factorial_root_ratio, lambert_w_m1, solve_linear_exponential


def _trial_is_prime(k):
    return k >= 2 and all(k % d for d in range(2, math.isqrt(k) + 1))


def test_criterion_01_exact_truncation_regression(table, report):
    table.pi(88_783)  # sieve warm-up is not part of the solve
    t0 = time.perf_counter()
    a = exact_truncation(599, table).x
    b = exact_truncation(88_783, table).x
    dt = time.perf_counter() - t0
    ok = abs(a - 2.15) <= 0.01 and abs(b - 3.00) <= 0.01 and dt < 1.0
    report("criterion 1 exact truncation", ok, f"g(599)={a:.6f}, g(88783)={b:.6f}, {dt * 1e3:.2f} ms")


def test_criterion_02_lambert_constants(report):
    lambert_w_m1(-0.3)  # first-call overhead
    t0 = time.perf_counter()
    w = lambert_w_m1(-0.5 / math.e).w
    c = -0.5 / w
    dt = time.perf_counter() - t0
    ok = abs(w + 2.678347) <= 1e-5 and abs(c - 0.186682) <= 1e-5 and abs(1 / 5.356694 - c) <= 1e-5
    ok = ok and dt < 1e-3 and c == limit_coefficients()[0]
    report("criterion 2 Lambert constants", ok, f"W={w:.9f}, c={c:.9f}, {dt * 1e6:.1f} us")


def test_criterion_03_factorial_root_ratios(report):
    t0 = time.perf_counter()
    got = [factorial_root_ratio(x) for x in (5, 10, 150)]
    dt = time.perf_counter() - t0
    want = [0.521034, 0.4528729, 0.3763755]
    ok = all(abs(g - w) <= 1e-6 for g, w in zip(got, want)) and dt < 1e-3
    report("criterion 3 factorial-root ratios", ok, f"{[round(g, 8) for g in got]}, {dt * 1e6:.1f} us")


def test_criterion_04_stieltjes_envelope(report):
    t0 = time.perf_counter()
    worst, where = 0.0, None
    for n in np.geomspace(4, 1e9, 1000):
        n = float(n)
        scaled = abs(li(n) - li_expansion(n, stieltjes_tau(n).tau).value) * math.log(n) ** 2
        if scaled > worst:
            worst, where = scaled, n
    dt = time.perf_counter() - t0
    ok = worst < 0.5 and dt < 30
    report("criterion 4 Stieltjes envelope", ok,
           f"max |li - li(n;tau)| ln^2 n = {worst:.4f} at n={where:.4g}, {dt:.2f} s")


def test_criterion_05_crossing_points(table, report):
    t0 = time.perf_counter()
    avg = find_crossing(CrossingPair.TRUNC_AVG_VS_SCHOENFELD, (4, 50_000), table)
    loglog = find_crossing(CrossingPair.TRUNC_LOGLOG_VS_SCHOENFELD, (4, 50_000), table)
    f12 = find_crossing(CrossingPair.F1_VS_F2, (10**8, 10**14), table)
    dt = time.perf_counter() - t0
    checks = [
        abs(avg - 6063) <= 2,
        abs(loglog - 33_520) <= 5,
        abs(f12 - 1.458e12) <= 0.005 * 1.458e12,
    ]
    ok = all(checks) and dt < 300
    report("criterion 5 crossing points", ok,
           f"TruncAvg={avg:.3f} (want 6063+-2), TruncLogLog={loglog:.3f} (want 33520+-5), "
           f"F1VsF2={f12:.6g} (want 1.458e12+-0.5%), {dt:.1f} s")


def test_criterion_06_analytic_simplified_crossing(report):
    envelope_constants()
    t0 = time.perf_counter()
    k = envelope_constants()
    n0 = simplified_crossing_analytic()
    dt = time.perf_counter() - t0
    ok = (abs(n0 / 5.915e24 - 1) <= 1e-3 and abs(k["log_amp_8pi"] - 6.065617) <= 1e-5
          and abs(k["log_base"] + 0.3133177) <= 1e-5 and dt < 1e-3)
    report("criterion 6 analytic crossing", ok,
           f"n0={n0:.7g}, ln(A 8pi)={k['log_amp_8pi']:.7f}, ln B={k['log_base']:.7f}")


def test_criterion_07_constant_pipeline(report):
    tail_integral.cache_clear()
    bound_constant.cache_clear()
    t0 = time.perf_counter()
    tail, const = tail_integral(), bound_constant()
    dt = time.perf_counter() - t0
    ok = abs(tail - 0.140010) <= 1e-5 and abs(-const + 0.553137) <= 1e-5 and dt < 1.0
    report("criterion 7 constant pipeline", ok, f"tail={tail:.7f}, -constant={-const:.7f}, {dt * 1e3:.1f} ms")


def test_criterion_08_double_bound_ordering(table, report):
    t0 = time.perf_counter()
    bad = []
    for k in range(5, 17):
        n = 10**k
        if not truncation_bound(n, limit_form(n, "LogLog").x) < schoenfeld_b_bound(n, table):
            bad.append(("LogLog", k))
    for k in range(4, 13):
        n = 10**k
        if not truncation_bound(n, avg_truncation(n, table).x) < schoenfeld_b_bound(n, table):
            bad.append(("ExactAvg", k))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1800
    report("criterion 8 double-bound ordering", ok,
           f"LogLog 1e5..1e16 and ExactAvg 1e4..1e12, violations {bad}, {dt:.1f} s")


def test_criterion_09_oracle_equivalence(table, report):
    t0 = time.perf_counter()
    # Trial division for every n <= 1e4.
    counts, c = [], 0
    for k in range(0, 10**4 + 1):
        c += _trial_is_prime(k)
        counts.append(c)
    pi_ok = table.pi_many(np.arange(10**4 + 1)).tolist() == counts
    # li against a ten times tighter tolerance.
    rng = np.random.default_rng(2024)
    ns = np.exp(rng.uniform(math.log(1.5), math.log(1e30), 100))
    li_err = max(abs(li(n, rtol=1e-12) - li(n, rtol=1e-13)) / abs(li(n, rtol=1e-13)) for n in ns)
    # Round trip of y = (x / (e ln n))^x through the lower branch; x below ln n.
    rt_err = 0.0
    for n in np.geomspace(16, 1e100, 40):
        L = math.log(n)
        for x in np.linspace(1.0, 0.95 * L, 25):
            y = (x / (math.e * L)) ** x
            if 0.0 < y < 1.0:
                rt_err = max(rt_err, abs(solve_linear_exponential(y, n) - x) / x)
    dt = time.perf_counter() - t0
    ok = pi_ok and li_err <= 1e-9 and rt_err <= 1e-10 and dt < 60
    report("criterion 9 oracle equivalence", ok,
           f"pi exact={pi_ok}, li rel diff={li_err:.2e}, round trip={rt_err:.2e}, {dt:.1f} s")


def test_criterion_10_error_ordering_at_1e9(table, report):
    n = 10**9
    p = table.pi(n)
    e_r = abs(riemann_r(n) - p) / p
    e_t = abs(li_expansion(n, avg_truncation(n, table).x).value - p) / p
    e_li = abs(li(n) - p) / p
    # "much smaller" taken as at least a factor 10.
    ok = e_r < e_t and 10 * e_t < e_li
    report("criterion 10 error ordering (1e9 substitute)", ok,
           f"err R={e_r:.3e} < err li(n;g_avg)={e_t:.3e} << err li={e_li:.3e}")


def test_criterion_11_figure_shapes(table, report):
    t0 = time.perf_counter()
    cfg = {"cache_path": None, "max_n": table.max_n}
    sweeps = {}
    for name in ("exact_truncation_2_100", "exact_truncation_2_1000", "exact_truncation_1e12_1e13",
                 "exact_vs_average_2_100", "exact_vs_average_2_10000",
                 "truncation_forms_1e3_1e6", "truncation_forms_1e12_1e13"):
        spec = load_figure(name)
        rows, _ = run_sweep(spec, table, cfg, workers=1)
        sweeps[name] = (spec, rows)
    complete = all(len(rows) == len(spec.grid()) for spec, rows in sweeps.values())

    # g_pi rises exactly where pi steps (n prime) once the additive form applies.
    _, rows = sweeps["exact_vs_average_2_10000"]
    g = {n: cells[0] for n, cells in rows}
    jump_bad = [n for n in range(12, 10_001) if (g[n] > g[n - 1]) != _trial_is_prime(n)]

    _, rows = sweeps["truncation_forms_1e3_1e6"]
    ns = np.array([n for n, _ in rows], dtype=float)
    avg = np.array([cells[1] for _, cells in rows])
    increasing = bool(np.all(np.diff(avg) > 0))
    slope = np.diff(avg) / np.diff(np.log(ns))
    smooth = bool(np.max(np.abs(np.diff(slope))) < 0.05 * np.max(slope))

    order_bad = []
    for name in ("truncation_forms_1e3_1e6", "truncation_forms_1e12_1e13"):
        for n, (ge, ga, gw) in sweeps[name][1]:
            if n >= 10**6 and not gw >= ga:
                order_bad.append(n)
    dt = time.perf_counter() - t0
    ok = complete and not jump_bad and increasing and smooth and not order_bad and dt < 600
    report("criterion 11 figure shapes", ok,
           f"complete={complete}, jumps off primes={jump_bad[:5]}, g_avg increasing={increasing}, "
           f"smooth={smooth}, ClosedFormW<g_avg at {order_bad[:5]}, {dt:.1f} s")


@pytest.mark.slow
def test_recipe_1e27_comparison(report):
    """The full 1e27 comparison; needs pi up to about 3.2e13."""
    from litrunc.primes import PrimeTable

    t = PrimeTable(max_n=4 * 10**13)
    n = 10**27
    p = t.pi(n)
    errs = {
        "li": abs(li(n) - p) / p,
        "R": abs(riemann_r(n) - p) / p,
        "li_trunc": abs(li_expansion(n, avg_truncation(n, t).x).value - p) / p,
    }
    ok = errs["li_trunc"] < errs["li"] and errs["R"] < errs["li"]
    report("recipe 1e27 comparison", ok, ", ".join(f"{k}={v:.3e}" for k, v in errs.items()))
