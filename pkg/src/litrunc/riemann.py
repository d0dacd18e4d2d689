"""Riemann's R function, sum of mu(r)/r li(n^{1/r})."""
from __future__ import annotations

import math

from .errors import DomainError
from .logint import li

__all__ = ["mobius", "riemann_r"]


def mobius(r: int) -> int:
    """Moebius mu(r) by trial factorisation."""
    r = int(r)
    if r < 1:
        raise DomainError(f"mobius needs r >= 1, got {r}")
    sign = 1
    p = 2
    while p * p <= r:
        if r % p == 0:
            r //= p
            if r % p == 0:
                return 0
            sign = -sign
        p += 1
    return -sign if r > 1 else sign


def riemann_r(n: float, terms: int = 5) -> float:
    """R(n) truncated to the first ``terms`` indices r with mu(r) != 0.

    ``terms=5`` keeps r = 1, 2, 3, 5, 6, stopping at the first positive
    correction.  Indices never exceed floor(log2 n), where n^{1/r} < 2.
    """
    if not n >= 2:
        raise DomainError(f"riemann_r needs n >= 2, got {n!r}")
    if terms < 1:
        raise DomainError(f"riemann_r needs terms >= 1, got {terms}")
    r_max = min(64, int(math.log2(n) + 1e-12))
    parts = []
    used = 0
    for r in range(1, r_max + 1):
        mu = mobius(r)
        if mu == 0:
            continue
        root = math.exp(math.log(n) / r)
        parts.append(mu / r * li(root))
        used += 1
        if used == terms:
            break
    return math.fsum(parts)
