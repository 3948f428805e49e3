"""Exact integer arithmetic underpinning every verdict in the package.

Counting quantities (family sizes, intersection bounds, part counts) stay
arbitrary-precision ints end to end; floats appear only in the log-scale
helper used for asymptotics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PrimePowerWitness",
    "binomial",
    "ceil_div",
    "is_prime_power",
    "log_binomial",
]

# Tail size up to which log_binomial sums exact factor logs.  Beyond it the
# three-term lgamma form is used; with min(r, n-r) this large the value
# exceeds 2e5, so lgamma's absolute error (~1e-7 near n = 1e7) stays under
# 1e-12 relative.  Below it, lgamma would cancel catastrophically for small
# r and huge n.
_LGAMMA_TAIL = 30_000


@dataclass(frozen=True)
class PrimePowerWitness:
    """Certificate that some integer equals base**exponent with base prime."""

    base: int
    exponent: int

    @property
    def value(self) -> int:
        return self.base**self.exponent


def binomial(n: int, r: int) -> int:
    """Exact C(n, r); 0 when r < 0 or r > n. Requires n >= 0."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def ceil_div(a: int, b: int) -> int:
    """Smallest integer >= a/b. Requires a >= 0 and b > 0."""
    if b <= 0:
        raise ValueError(f"ceil_div requires b > 0, got b={b}")
    if a < 0:
        raise ValueError(f"ceil_div requires a >= 0, got a={a}")
    return -(-a // b)


def _smallest_factor(x: int) -> int:
    """Least prime factor of x >= 2 by 6k+-1 trial division."""
    if x % 2 == 0:
        return 2
    if x % 3 == 0:
        return 3
    d = 5
    while d * d <= x:
        if x % d == 0:
            return d
        if x % (d + 2) == 0:
            return d + 2
        d += 6
    return x


def is_prime_power(x: int) -> PrimePowerWitness | None:
    """Witness (p, e) with p**e == x and p prime, or None if x is not a prime power.

    1 is not a prime power: downstream intersection bounds need a genuine
    prime base, so x = 1 yields None rather than a degenerate witness.
    """
    if x < 1:
        raise ValueError(f"is_prime_power requires x >= 1, got {x}")
    if x == 1:
        return None
    p = _smallest_factor(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    if x != 1:
        return None
    return PrimePowerWitness(p, e)


def log_binomial(n: int, r: int) -> float:
    """Natural log of C(n, r), relative error <= 1e-12 for n <= 1e7.

    Requires 0 <= r <= n.
    """
    if n < 0:
        raise ValueError(f"log_binomial requires n >= 0, got n={n}")
    if r < 0 or r > n:
        raise ValueError(f"log_binomial requires 0 <= r <= n, got n={n}, r={r}")
    t = min(r, n - r)
    if t == 0:
        return 0.0
    if t <= _LGAMMA_TAIL:
        terms = [math.log(n - t + i) for i in range(1, t + 1)]
        terms.extend(-math.log(i) for i in range(2, t + 1))
        return math.fsum(terms)
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
