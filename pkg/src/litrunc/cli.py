"""litrunc command line: single values, figure sweeps, crossings and checks.

Exit codes: 0 success, 1 domain or usage error (and failed verification),
2 resource limit, 3 I/O or cache error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import (
    CrossingPair,
    f1,
    f1_envelope,
    f2,
    find_crossing,
    schoenfeld_b_bound,
    truncation_bound,
)
from .errors import (
    CacheError,
    DomainError,
    LitruncError,
    NoRootError,
    QuadratureError,
    ResourceLimitError,
)
from .logint import li, li_expansion, sigma_tilde, stieltjes_tau
from .primes import PrimeTable, beta_n, density, prime_power_sum
from .riemann import riemann_r
from .solvers import (
    avg_truncation,
    avg_truncation_asymptotic,
    avg_truncation_first_order,
    exact_truncation,
    limit_form,
)

log = logging.getLogger("litrunc")

FAST_PI_LIMIT = 10**10
DEFAULT_MAX_N = 10**13
CSV_DIGITS = 15
VALUE_DIGITS = 12

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3

DEFAULT_CROSSING_RANGES = {
    CrossingPair.TRUNC_AVG_VS_SCHOENFELD: (4, 50_000),
    CrossingPair.TRUNC_LOGLOG_VS_SCHOENFELD: (4, 50_000),
    CrossingPair.F1_VS_F2: (10**8, 10**14),
}


class UsageError(DomainError):
    pass


def parse_int(text) -> int:
    """Integer from '599', '10^6', '1e6', '5*10^4' or '10^10+1000'."""
    if isinstance(text, int):
        return text
    s = str(text).replace(" ", "").replace("_", "")
    try:
        total = 0
        for term in s.split("+"):
            prod = 1
            for factor in term.split("*"):
                if "^" in factor:
                    base, exp = factor.split("^")
                    prod *= int(base) ** int(exp)
                elif "e" in factor.lower() or "." in factor:
                    d = Decimal(factor)
                    if d != d.to_integral_value():
                        raise ValueError
                    prod *= int(d)
                else:
                    prod *= int(factor)
            total += prod
    except (ValueError, InvalidOperation):
        raise UsageError(f"not an integer expression: {text!r}") from None
    return total


# -- quantities ---------------------------------------------------------------

@dataclass
class Options:
    x: float | None = None
    form: str = "ExactAvg"
    variant: str = "LogLog"
    terms: int = 5


def _g_avg(n, o, t):
    return avg_truncation(n, t).x


def _trunc_x(n, form, t):
    if form == "ExactAvg":
        return avg_truncation(n, t).x
    return limit_form(n, form).x


def _solution(fn):
    def run(n, o, t):
        s = fn(n, t)
        diag = {"residual": s.residual, "method": s.method.value}
        diag.update(s.diagnostics)
        return s.x, diag
    return run


QUANTITIES = {
    "pi": lambda n, o, t: t.pi(n),
    "theta": lambda n, o, t: t.theta(n),
    "li": lambda n, o, t: li(n),
    "li_trunc": lambda n, o, t: li_expansion(n, o.x if o.x is not None else _g_avg(n, o, t)).value,
    "g_exact": _solution(exact_truncation),
    "g_avg": _solution(avg_truncation),
    "g_asym": _solution(avg_truncation_asymptotic),
    "g_first": _solution(avg_truncation_first_order),
    "g_limit": lambda n, o, t: limit_form(n, o.variant).x,
    "g_limit_simple": lambda n, o, t: limit_form(n, "Simple").x,
    "tau": lambda n, o, t: stieltjes_tau(n).tau,
    "Rn": lambda n, o, t: riemann_r(n, o.terms),
    "pps": lambda n, o, t: prime_power_sum(n, t).value,
    "density": lambda n, o, t: density(n, t).d,
    "beta": lambda n, o, t: beta_n(n),
    "sigma_exact": lambda n, o, t: sigma_tilde(n, exact_truncation(n, t).x),
    "f1": lambda n, o, t: f1(n),
    "f1_envelope": lambda n, o, t: f1_envelope(n),
    "f2": lambda n, o, t: f2(n, t),
    "schoenfeld_b": lambda n, o, t: schoenfeld_b_bound(n, t),
    "trunc_bound": lambda n, o, t: truncation_bound(n, o.x if o.x is not None else _trunc_x(n, o.form, t)),
    "trunc_bound_avg": lambda n, o, t: truncation_bound(n, _trunc_x(n, "ExactAvg", t)),
    "trunc_bound_loglog": lambda n, o, t: truncation_bound(n, _trunc_x(n, "LogLog", t)),
    "trunc_bound_simple": lambda n, o, t: truncation_bound(n, _trunc_x(n, "Simple", t)),
}


def evaluate(quantity: str, n: int, opts: Options, table: PrimeTable):
    """Returns ``(value, diagnostics or None)``."""
    try:
        fn = QUANTITIES[quantity]
    except KeyError:
        raise UsageError(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}") from None
    out = fn(n, opts, table)
    return out if isinstance(out, tuple) else (out, None)


# -- configuration ------------------------------------------------------------

def _config(args) -> dict:
    cache = args.cache or os.environ.get("LITRUNC_CACHE") or None
    max_n = args.max_n
    if max_n is None:
        env = os.environ.get("LITRUNC_MAX_N")
        max_n = parse_int(env) if env else DEFAULT_MAX_N
    if not args.allow_slow:
        max_n = min(max_n, FAST_PI_LIMIT)
    return {"cache_path": cache, "max_n": max_n}


def _table(cfg: dict) -> PrimeTable:
    try:
        return PrimeTable(max_n=cfg["max_n"], cache_path=cfg["cache_path"])
    except CacheError:
        raise
    except OSError as exc:
        raise CacheError(f"cannot read cache {cfg['cache_path']}: {exc}") from exc


def _fmt(v, digits: int) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    return f"{v:.{digits}g}" if math.isfinite(v) else ""


# -- value ----------------------------------------------------------------

def cmd_value(args) -> int:
    table = _table(_config(args))
    opts = Options(x=args.x, form=args.form, variant=args.variant, terms=args.terms)
    value, diag = evaluate(args.quantity, args.n, opts, table)
    print(_fmt(value, VALUE_DIGITS))
    for k, v in (diag or {}).items():
        print(f"# {k}: {_fmt(v, VALUE_DIGITS) if isinstance(v, float) else v}")
    return EXIT_OK


# -- sweep ----------------------------------------------------------------

SPACINGS = ("Linear", "Log", "EveryInteger")


@dataclass
class SweepSpec:
    lo: int
    hi: int
    points: int
    spacing: str
    columns: list
    description: str = ""
    budget_seconds: float | None = None
    slow: bool = False

    def __post_init__(self):
        self.lo, self.hi = parse_int(self.lo), parse_int(self.hi)
        if self.lo < 2 or self.hi < self.lo:
            raise UsageError(f"need 2 <= lo <= hi, got lo={self.lo}, hi={self.hi}")
        if self.spacing not in SPACINGS:
            raise UsageError(f"spacing must be one of {SPACINGS}, got {self.spacing!r}")
        if self.spacing != "EveryInteger" and self.points < 2:
            raise UsageError("points must be >= 2")
        unknown = [c for c in self.columns if c not in QUANTITIES]
        if unknown:
            raise UsageError(f"unknown column(s) {unknown}")

    def grid(self) -> list[int]:
        if self.spacing == "EveryInteger":
            return list(range(self.lo, self.hi + 1))
        if self.spacing == "Linear":
            pts = np.linspace(self.lo, self.hi, self.points)
        else:
            pts = np.geomspace(self.lo, self.hi, self.points)
        g = [int(round(p)) for p in pts]
        g[0], g[-1] = self.lo, self.hi
        return sorted(set(g))


def figure_names() -> list[str]:
    root = resources.files("litrunc").joinpath("figures")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_figure(name_or_path: str) -> SweepSpec:
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        text = path.read_text("utf-8")
    else:
        res = resources.files("litrunc").joinpath("figures", f"{name_or_path}.json")
        if not res.is_file():
            raise UsageError(f"no figure spec {name_or_path!r}; known: {', '.join(figure_names())}")
        text = res.read_text("utf-8")
    return SweepSpec(**json.loads(text))


_WORKER_TABLE: PrimeTable | None = None


def _init_worker(cfg: dict) -> None:
    global _WORKER_TABLE
    # Workers read the cache but never write it.
    table = PrimeTable(max_n=cfg["max_n"])
    if cfg["cache_path"] and Path(cfg["cache_path"]).exists():
        table.load_cache(cfg["cache_path"])
    _WORKER_TABLE = table


def _row(n: int, columns: list, table: PrimeTable | None = None):
    table = table or _WORKER_TABLE
    cells, errors = [], []
    for col in columns:
        try:
            cells.append(evaluate(col, n, Options(), table)[0])
        except ResourceLimitError:
            raise
        except (DomainError, NoRootError, QuadratureError) as exc:
            cells.append(None)
            errors.append((col, str(exc)))
    return cells, errors


def run_sweep(spec: SweepSpec, table: PrimeTable, cfg: dict, workers: int = 1):
    """Rows in grid order plus per-column error summaries."""
    grid = spec.grid()
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(cfg,)) as pool:
            chunk = max(1, len(grid) // (8 * workers))
            results = list(pool.map(_row, grid, [spec.columns] * len(grid), chunksize=chunk))
    else:
        results = [_row(n, spec.columns, table) for n in grid]
    rows, failures = [], {}
    for n, (cells, errors) in zip(grid, results):
        rows.append((n, cells))
        for col, msg in errors:
            first = failures.setdefault(col, [0, n, msg])
            first[0] += 1
    return rows, failures


def write_csv(fh, spec: SweepSpec, rows, argv) -> None:
    fh.write(f"# litrunc {__version__}\n")
    fh.write(f"# command: {' '.join(argv)}\n")
    fh.write(f"# grid: {spec.spacing} lo={spec.lo} hi={spec.hi} points={spec.points}\n")
    fh.write(",".join(["n", *spec.columns]) + "\n")
    for n, cells in rows:
        fh.write(",".join([str(n), *(_fmt(c, CSV_DIGITS) for c in cells)]) + "\n")


def cmd_sweep(args) -> int:
    if args.list:
        for name in figure_names():
            spec = load_figure(name)
            slow = " [--allow-slow]" if spec.slow else ""
            print(f"{name}: {spec.description} (budget {spec.budget_seconds:g} s){slow}")
        return EXIT_OK
    if args.figure:
        spec = load_figure(args.figure)
    else:
        if args.lo is None or args.hi is None or not args.columns:
            raise UsageError("sweep needs --figure, or --lo, --hi and --columns")
        spec = SweepSpec(args.lo, args.hi, args.points, args.spacing, args.columns.split(","))
    if spec.slow and not args.allow_slow:
        raise ResourceLimitError(f"this sweep counts primes beyond {FAST_PI_LIMIT:.0e}; pass --allow-slow")
    cfg = _config(args)
    table = _table(cfg)
    workers = args.workers or os.cpu_count() or 1
    rows, failures = run_sweep(spec, table, cfg, workers)
    for col, (count, first, msg) in failures.items():
        print(f"warning: {col}: {count} point(s) left empty, first at n={first}: {msg}", file=sys.stderr)
    argv = ["litrunc", *args.argv]
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                write_csv(fh, spec, rows, argv)
        except OSError as exc:
            raise CacheError(f"cannot write {args.out}: {exc}") from exc
    else:
        write_csv(sys.stdout, spec, rows, argv)
    return EXIT_OK


# -- compare-pi -------------------------------------------------------------

def cmd_compare_pi(args) -> int:
    table = _table(_config(args))
    n = args.n
    try:
        p = table.pi(n)
    except ResourceLimitError as exc:
        print(f"warning: pi({n}) unavailable ({exc}); approximations only", file=sys.stderr)
        p = None
    rows = [("pi", p)]
    if n >= 2:
        rows.append(("li", li(n)))
        rows.append(("R", riemann_r(n, args.terms)))
    if n >= 4:
        try:
            rows.append(("li_trunc", li_expansion(n, avg_truncation(n, table).x).value))
        except ResourceLimitError as exc:
            print(f"warning: average truncation unavailable ({exc})", file=sys.stderr)
    print("quantity,value,rel_err")
    for name, v in rows:
        if v is None:
            print(f"{name},,")
            continue
        err = "" if (p is None or name == "pi" or p == 0) else f"{abs(v - p) / p:.3e}"
        print(f"{name},{_fmt(v, VALUE_DIGITS) if name != 'pi' else v},{err}")
    return EXIT_OK


# -- crossing ---------------------------------------------------------------

def cmd_crossing(args) -> int:
    pair = CrossingPair(args.pair)
    lo, hi = DEFAULT_CROSSING_RANGES[pair]
    lo = args.lo if args.lo is not None else lo
    hi = args.hi if args.hi is not None else hi
    table = _table(_config(args))
    x = find_crossing(pair, (lo, hi), table)
    print(f"{pair.value},{x:.10g}")
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    from .checks import run_checks

    table = _table(_config(args))
    results = run_checks(table, seed=args.seed, grid=args.grid)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_DOMAIN


# -- cache ------------------------------------------------------------------

def cmd_cache(args) -> int:
    cfg = _config(args)
    if not cfg["cache_path"]:
        raise CacheError("no cache configured; use --cache or LITRUNC_CACHE")
    path = Path(cfg["cache_path"])
    if not path.exists():
        raise CacheError(f"cache file {path} does not exist")
    table = _table(cfg)  # loading already validates
    ms = sorted(table.cache)
    if args.action == "inspect":
        print(f"path: {path}")
        print(f"entries: {len(ms)}")
        if ms:
            print(f"range: {ms[0]} .. {ms[-1]}")
    else:
        checked = table.validate()
        print(f"ok: {len(ms)} entries, {len(checked)} checked against the sieve")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="prime-count cache file (env LITRUNC_CACHE)")
    common.add_argument("--max-n", type=parse_int, help="largest m for computed pi(m) (env LITRUNC_MAX_N)")
    common.add_argument("--allow-slow", action="store_true", help=f"allow pi(m) beyond {FAST_PI_LIMIT:.0e}")
    common.add_argument("--workers", type=int, default=None, help="sweep worker processes (default: CPUs)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="litrunc", description="Truncations of the logarithmic integral's expansion.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    v = sub.add_parser("value", parents=[common], help="evaluate one quantity at one n")
    v.add_argument("quantity", help=", ".join(QUANTITIES))
    v.add_argument("--n", type=parse_int, required=True)
    v.add_argument("--x", type=float, help="truncation point for li_trunc / trunc_bound")
    v.add_argument("--form", default="ExactAvg", choices=["ExactAvg", "LogLog", "Simple"])
    v.add_argument("--variant", default="LogLog", choices=["LogLog", "Simple"])
    v.add_argument("--terms", type=int, default=5, help="nonzero-mu terms for Rn")
    v.set_defaults(func=cmd_value)

    s = sub.add_parser("sweep", parents=[common], help="evaluate columns on a grid, CSV out")
    s.add_argument("--figure", help="shipped figure spec name or a .json path")
    s.add_argument("--list", action="store_true", help="list shipped figure specs")
    s.add_argument("--lo", type=parse_int)
    s.add_argument("--hi", type=parse_int)
    s.add_argument("--points", type=int, default=100)
    s.add_argument("--spacing", default="Log", choices=SPACINGS)
    s.add_argument("--columns", help="comma separated quantity names")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("compare-pi", parents=[common], help="pi(n) against li, R and li(n; g_avg)")
    c.add_argument("--n", type=parse_int, required=True)
    c.add_argument("--terms", type=int, default=5)
    c.set_defaults(func=cmd_compare_pi)

    x = sub.add_parser("crossing", parents=[common], help="locate where two bounds cross")
    x.add_argument("pair", choices=[e.value for e in CrossingPair])
    x.add_argument("--lo", type=parse_int)
    x.add_argument("--hi", type=parse_int)
    x.set_defaults(func=cmd_crossing)

    r = sub.add_parser("verify", parents=[common], help="run the invariant checks")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--grid", type=int, default=200, help="sample points per check")
    r.set_defaults(func=cmd_verify)

    k = sub.add_parser("cache", parents=[common], help="inspect or validate the pi cache")
    k.add_argument("action", choices=["inspect", "validate"])
    k.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    level = logging.INFO if (args.verbose or args.allow_slow) else logging.WARNING
    logging.basicConfig(level=level, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        hint = "" if args.allow_slow else " (pass --allow-slow to count primes beyond 1e10)"
        print(f"litrunc: resource limit: {exc}{hint}", file=sys.stderr)
        return EXIT_RESOURCE
    except (CacheError, OSError) as exc:
        print(f"litrunc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, NoRootError, QuadratureError) as exc:
        where = type(exc).__module__ if isinstance(exc, UsageError) else _origin(exc)
        print(f"litrunc: domain error ({where}): {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def _origin(exc: BaseException) -> str:
    """Name of the litrunc module that raised, taken from the traceback."""
    tb = exc.__traceback__
    mod = "litrunc"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("litrunc.") and name != "litrunc.cli":
            mod = name
        tb = tb.tb_next
    return mod


if __name__ == "__main__":
    sys.exit(main())
