"""Truncation points of the logarithmic integral's asymptotic expansion.

The real truncation x at which li(n; x) meets pi(n), its average over
prime powers, closed forms through the lower Lambert W branch, and the
explicit bounds built on them.
"""
__version__ = "0.1.0"

from .errors import (
    CacheError,
    DomainError,
    LitruncError,
    NoRootError,
    QuadratureError,
    ResourceLimitError,
)
from .logint import li, li2, li_expansion, li_expansion_signed, sigma_tilde, source_integral, stieltjes_tau
from .primes import PrimeTable, beta_n, density, prime_count, prime_power_sum, theta
from .riemann import mobius, riemann_r
from .solvers import (
    Method,
    TruncationSolution,
    avg_truncation,
    avg_truncation_asymptotic,
    avg_truncation_first_order,
    exact_truncation,
    limit_form,
)
from .special import factorial_root_ratio, lambert_w_m1, log_gamma
