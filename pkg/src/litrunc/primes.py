"""Exact prime counting and the prime-power quantities built on it.

``PrimeTable`` answers pi(m) from a lazily grown odd-only sieve for
``m <= small_limit`` and from the Lucy / Legendre recurrence over the values
``floor(m/k)`` above that.  Results from the recurrence are cached and can be
persisted to a tab-separated file.
"""
from __future__ import annotations

import enum
import logging
import math
import os
import tempfile
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CacheError, DomainError, ResourceLimitError

try:  # Walisch's primecount; the Lucy recurrence below is the fallback.
    import primecountpy as _primecount
except ImportError:  # pragma: no cover
    _primecount = None

__all__ = [
    "Backend",
    "PrimeTable",
    "PrimePowerSum",
    "Density",
    "sieve_primes",
    "lucy_prime_count",
    "iroot",
    "load_checkpoints",
    "default_table",
    "prime_count",
    "theta",
    "prime_power_sum",
    "density",
    "beta_n",
]

log = logging.getLogger(__name__)

DEFAULT_SMALL_LIMIT = 10**8
DEFAULT_MAX_N = 10**13
_MIN_SIEVE = 1 << 16


class Backend(enum.Enum):
    SIEVE_ONLY = "sieve"
    COMBINATORIAL = "combinatorial"  # primecount when installed, else Lucy
    LUCY = "lucy"


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit (odd-only sieve of Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    size = (limit - 1) // 2 + 1  # index i stands for 2i + 1
    odd = np.ones(size, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    out = np.empty(int(odd.sum()) + 1, dtype=np.int64)
    out[0] = 2
    out[1:] = 2 * np.flatnonzero(odd) + 1
    return out


def lucy_prime_count(n: int, primes: np.ndarray | None = None) -> int:
    """pi(n) by the Lucy recurrence on the values floor(n/k).

    ``S(v, p) = S(v, p-1) - [S(v/p, p-1) - S(p-1, p-1)]`` for every v >= p^2,
    vectorised over v; cost is O(n^{3/4}) array work.  ``primes`` must cover
    ``[2, isqrt(n)]`` when given.
    """
    n = int(n)
    if n < 2:
        return 0
    r = math.isqrt(n)
    if primes is None:
        primes = sieve_primes(r)
    small = np.arange(-1, r, dtype=np.int64)  # small[v] = S(v), v = 0..r
    small[0] = 0
    k = np.arange(1, r + 1, dtype=np.int64)
    large = np.empty(r + 1, dtype=np.int64)  # large[k] = S(n // k)
    large[0] = 0
    large[1:] = n // k - 1
    for p in primes[: np.searchsorted(primes, r, side="right")].tolist():
        sp = small[p - 1]
        p2 = p * p
        kmax = min(r, n // p2)
        kp = k[:kmax] * p
        inner = kp <= r
        upd = np.empty(kmax, dtype=np.int64)
        upd[inner] = large[kp[inner]]
        upd[~inner] = small[n // kp[~inner]]
        large[1 : kmax + 1] -= upd - sp
        if p2 <= r:
            small[p2:] -= small[np.arange(p2, r + 1, dtype=np.int64) // p] - sp
    return int(large[1])


def iroot(n: int, r: int) -> int:
    """floor(n ** (1/r)) exactly, for integers n >= 0 and r >= 1."""
    if n < 0 or r < 1:
        raise DomainError(f"iroot needs n >= 0 and r >= 1, got {n}, {r}")
    if n < 2 or r == 1:
        return n
    if r == 2:
        return math.isqrt(n)
    x = int(round(math.exp(math.log(n) / r)))
    while x**r > n:
        x -= 1
    while (x + 1) ** r <= n:
        x += 1
    return x


def load_checkpoints() -> dict[int, tuple[int, str]]:
    """OEIS pi(10^k) checkpoints shipped with the package, keyed by 10^k."""
    text = resources.files("litrunc").joinpath("data/pi_checkpoints.tsv").read_text("utf-8")
    out = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        key, value, tag = line.split("\t")
        base, exp = key.split("^")
        out[int(base) ** int(exp)] = (int(value), tag)
    return out


class PrimeTable:
    """Queryable exact pi(m).

    Queries are safe from several threads; the sieve only ever grows and the
    cache writer holds a lock.
    """

    def __init__(
        self,
        small_limit: int = DEFAULT_SMALL_LIMIT,
        max_n: int = DEFAULT_MAX_N,
        backend: Backend = Backend.COMBINATORIAL,
        cache_path: str | os.PathLike | None = None,
        use_checkpoints: bool = True,
    ):
        if small_limit < 2:
            raise DomainError("small_limit must be >= 2")
        self.small_limit = int(small_limit)
        self.max_n = int(max_n)
        self.backend = Backend(backend)
        self.cache: dict[int, int] = {}
        self.cache_path = Path(cache_path) if cache_path else None
        self._checkpoints = load_checkpoints() if use_checkpoints else {}
        self._primes = np.empty(0, dtype=np.int64)
        self._sieved_to = 1
        self._theta_cum: np.ndarray | None = None
        self._lock = threading.RLock()
        if self.cache_path and self.cache_path.exists():
            self.load_cache(self.cache_path)

    # -- sieve ---------------------------------------------------------------
    def _ensure_sieve(self, m: int) -> None:
        if m <= self._sieved_to:
            return
        with self._lock:
            if m <= self._sieved_to:
                return
            target = min(self.small_limit, max(m, 2 * self._sieved_to, _MIN_SIEVE))
            self._primes = sieve_primes(target)
            self._sieved_to = target
            self._theta_cum = None

    @property
    def sieved_to(self) -> int:
        return self._sieved_to

    def primes_up_to(self, m: int) -> np.ndarray:
        if m > self.small_limit:
            raise DomainError(f"primes_up_to({m}) exceeds small_limit={self.small_limit}")
        self._ensure_sieve(m)
        return self._primes[: np.searchsorted(self._primes, m, side="right")]

    def _sieve_pi(self, m: int) -> int:
        self._ensure_sieve(m)
        return int(np.searchsorted(self._primes, m, side="right"))

    def pi_many(self, ms) -> np.ndarray:
        """Vectorised pi for an array of m <= small_limit."""
        ms = np.asarray(ms, dtype=np.int64)
        if ms.size == 0:
            return ms.copy()
        top = int(ms.max())
        if top > self.small_limit:
            raise DomainError("pi_many is limited to the sieve range")
        self._ensure_sieve(top)
        return np.searchsorted(self._primes, ms, side="right").astype(np.int64)

    # -- counting ------------------------------------------------------------
    def pi(self, m: int) -> int:
        m = int(m)
        if m < 0:
            raise DomainError(f"pi(m) needs m >= 0, got {m}")
        if m <= self.small_limit:
            return self._sieve_pi(m)
        hit = self.cache.get(m)
        if hit is not None:
            return hit
        if m in self._checkpoints:
            return self._checkpoints[m][0]
        if m > self.max_n:
            raise ResourceLimitError(
                f"pi({m}) exceeds the configured maximum {self.max_n:.3g} and has no checkpoint"
            )
        if self.backend is Backend.SIEVE_ONLY:
            raise ResourceLimitError(f"pi({m}) is above small_limit and the backend is sieve-only")
        log.info("counting primes up to %d", m)
        if self.backend is Backend.COMBINATORIAL and _primecount is not None and m < 2**63:
            value = int(_primecount.prime_pi(m))
        else:
            value = lucy_prime_count(m, self.primes_up_to(min(math.isqrt(m), self.small_limit)))
        self._remember(m, value)
        return value

    def theta(self, m: int) -> float:
        """Chebyshev theta(m) = sum of ln p over p <= m, summed exactly via fsum."""
        m = int(m)
        if m < 2:
            raise DomainError(f"theta(m) needs m >= 2, got {m}")
        if m > self.small_limit:
            raise DomainError(f"theta({m}) is only available up to small_limit={self.small_limit}")
        return math.fsum(np.log(self.primes_up_to(m).astype(np.float64)))

    def theta_many(self, ms) -> np.ndarray:
        """theta on a grid, from a cumulative sum carried in extended precision."""
        ms = np.asarray(ms, dtype=np.int64)
        top = int(ms.max())
        if top > self.small_limit:
            raise DomainError("theta_many is limited to the sieve range")
        self._ensure_sieve(top)
        with self._lock:
            if self._theta_cum is None or len(self._theta_cum) != len(self._primes):
                logs = np.log(self._primes.astype(np.longdouble))
                self._theta_cum = np.concatenate(([0.0], np.cumsum(logs)))
            cum = self._theta_cum
        idx = np.searchsorted(self._primes, ms, side="right")
        return cum[idx].astype(np.float64)

    # -- cache ---------------------------------------------------------------
    def _remember(self, m: int, value: int) -> None:
        with self._lock:
            self.cache[m] = value
            if self.cache_path is not None:
                self._write_cache(m, value)

    def _write_cache(self, m: int, value: int) -> None:
        path = self.cache_path
        path.parent.mkdir(parents=True, exist_ok=True)
        # Appending keeps the file sorted only when m is the new maximum.
        if m == max(self.cache):
            with open(path, "a", encoding="utf-8") as fh:
                fh.write(f"{m}\t{value}\n")
            return
        self.save_cache()

    def save_cache(self, path: str | os.PathLike | None = None) -> None:
        """Rewrite the cache file sorted by m (atomic replace)."""
        path = Path(path or self.cache_path)
        with self._lock:
            lines = "".join(f"{m}\t{v}\n" for m, v in sorted(self.cache.items()))
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(lines)
            os.replace(tmp, path)

    def load_cache(self, path: str | os.PathLike) -> int:
        """Merge ``m<TAB>pi`` records; entries inside the sieve range are verified."""
        loaded = {}
        for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                m_s, v_s = line.split("\t")[:2]
                loaded[int(m_s)] = int(v_s)
            except ValueError as exc:
                raise CacheError(f"{path}:{lineno}: malformed record {line!r}") from exc
        self.validate(loaded)
        with self._lock:
            self.cache.update(loaded)
        return len(loaded)

    def validate(self, records: dict[int, int] | None = None) -> list[int]:
        """Check records against the sieve and monotonicity; returns checked m."""
        records = self.cache if records is None else records
        checked = []
        prev_m, prev_v = -1, -1
        for m, v in sorted(records.items()):
            if v < prev_v:
                raise CacheError(f"cache not monotone: pi({prev_m})={prev_v} > pi({m})={v}")
            if m <= self.small_limit:
                exact = self._sieve_pi(m)
                if exact != v:
                    raise CacheError(f"cache says pi({m})={v}, sieve says {exact}")
                checked.append(m)
            prev_m, prev_v = m, v
        return checked

    def checkpoint(self, m: int) -> tuple[int, str] | None:
        return self._checkpoints.get(int(m))


_DEFAULT: PrimeTable | None = None


def default_table() -> PrimeTable:
    """Process-wide table used when callers pass ``table=None``."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = PrimeTable()
    return _DEFAULT


def prime_count(m: int, table: PrimeTable | None = None) -> int:
    return (table or default_table()).pi(m)


def theta(m: int, table: PrimeTable | None = None) -> float:
    return (table or default_table()).theta(m)


@dataclass(frozen=True)
class PrimePowerSum:
    """sum_{r=2}^{floor(log2 n)} pi(n^{1/r}) / r, with its individual terms."""

    n: int
    value: float
    terms: list[tuple[int, float]] = field(default_factory=list)


@dataclass(frozen=True)
class Density:
    n: int
    d: float


def prime_power_sum(n: int, table: PrimeTable | None = None) -> PrimePowerSum:
    n = int(n)
    if n < 2:
        raise DomainError(f"prime_power_sum needs n >= 2, got {n}")
    table = table or default_table()
    terms = [(r, table.pi(iroot(n, r)) / r) for r in range(2, n.bit_length())]
    return PrimePowerSum(n, math.fsum(v for _, v in terms), terms)


def density(n: int, table: PrimeTable | None = None) -> Density:
    n = int(n)
    if n < 4:
        raise DomainError(f"density needs n >= 4, got {n}")
    return Density(n, prime_power_sum(n, table).value / n)


def beta_n(n: int) -> float:
    """Exponent b with sum_{r=2}^{floor(log2 n)} n^{1/r} = n^b."""
    n = int(n)
    if n < 4:
        raise DomainError(f"beta_n needs n >= 4, got {n}")
    L = math.log(n)
    # Factor out n^{1/2} so huge n cannot overflow.
    rest = math.fsum(math.exp(L * (1.0 / r - 0.5)) for r in range(2, n.bit_length()))
    return 0.5 + math.log(rest) / L
