"""Counting bounds and dimension scans for cut-set families.

Everything that feeds a verdict is exact integer arithmetic; floats appear
only in the asymptotic rate and the 1.99^n comparison value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactmath import PrimePowerWitness, binomial, ceil_div, is_prime_power, log_binomial

__all__ = [
    "EXACT_RATE_K_MAX",
    "LOG_RATE_AGREEMENT_K_MIN",
    "BoundReport",
    "CoverageEntry",
    "CoverageReport",
    "asymptotic_rate",
    "bound_report",
    "bound_report_json",
    "coverage_json",
    "coverage_scan",
    "fr_bound",
    "fw_upper_bound",
    "min_counterexample_k",
    "rate_exact",
    "rate_log_space",
    "rate_threshold_scan",
]

# Largest k for which the exact big-integer rate path is evaluated.
EXACT_RATE_K_MAX = 64
# From this k on the ceil step in parts_lower_bound shifts the rate by less
# than 1e-9 relative, so the exact and log-space paths must agree there.
LOG_RATE_AGREEMENT_K_MIN = 32


def fw_upper_bound(n: int) -> int:
    """Largest family of n/2-subsets of an n-set avoiding intersection n/4:
    at most 2*C(n-1, n/4-1) sets, for n = 4k with k a prime power."""
    if n < 4 or n % 4:
        raise ValueError(f"n must be a positive multiple of 4, got {n}")
    return 2 * binomial(n - 1, n // 4 - 1)


@dataclass(frozen=True)
class BoundReport:
    """Exact counting data and the counterexample verdict for one k."""

    k: int
    m: int
    dimension: int
    family_size: int
    fw_bound: int
    part_capacity: int
    parts_lower_bound: int
    prime_power: PrimePowerWitness | None
    counterexample: bool

    @property
    def is_prime_power(self) -> bool:
        return self.prime_power is not None

    @property
    def fw_applicable(self) -> bool:
        """The intersection bound needs k to be a genuine prime power."""
        return self.prime_power is not None


def bound_report(k: int) -> BoundReport:
    """Exact bound report for parameter k (m = 4k, dimension C(m,2) - 1).

    A part avoiding the minimal intersection corresponds, once both sides of
    each member partition are listed, to a complement-closed family of
    m/2-subsets of the m ground elements with no pairwise intersection of
    size m/4.  The intersection bound caps that set family at fw_bound
    sets, i.e. at fw_bound/2 partitions per part, so any qualifying
    partition of the whole family needs at least
    ceil(family_size / (fw_bound/2)) parts.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    m = 4 * k
    dimension = binomial(m, 2) - 1
    fam = binomial(m, 2 * k) // 2
    fw = fw_upper_bound(m)
    capacity = fw // 2
    parts = ceil_div(fam, capacity)
    witness = is_prime_power(k)
    return BoundReport(
        k=k,
        m=m,
        dimension=dimension,
        family_size=fam,
        fw_bound=fw,
        part_capacity=capacity,
        parts_lower_bound=parts,
        prime_power=witness,
        counterexample=witness is not None and parts > dimension + 1,
    )


def bound_report_json(report: BoundReport) -> dict:
    """JSON-ready dict; big integers as decimal strings."""
    return {
        "k": report.k,
        "m": report.m,
        "d": report.dimension,
        "family_size": str(report.family_size),
        "fw_bound": str(report.fw_bound),
        "parts_lower_bound": str(report.parts_lower_bound),
        "prime_power": report.is_prime_power,
        "counterexample": report.counterexample,
    }


def min_counterexample_k(limit: int) -> int | None:
    """Smallest prime-power k <= limit whose report is a counterexample."""
    for k in range(1, limit + 1):
        if bound_report(k).counterexample:
            return k
    return None


@dataclass(frozen=True)
class CoverageEntry:
    """Verdict for one dimension d: covered iff some feasible k beats d+1 parts."""

    d: int
    covered: bool
    best_k: int | None
    best_bound: int | None

    @property
    def witness_k(self) -> int | None:
        return self.best_k if self.covered else None


@dataclass(frozen=True)
class CoverageReport:
    """Per-dimension coverage over [d_lo, d_hi]."""

    d_lo: int
    d_hi: int
    entries: tuple[CoverageEntry, ...]

    @property
    def covered_count(self) -> int:
        return sum(1 for e in self.entries if e.covered)

    @property
    def all_covered(self) -> bool:
        return self.covered_count == len(self.entries)

    def uncovered_ranges(self) -> list[tuple[int, int]]:
        """Maximal runs of uncovered dimensions as (lo, hi) inclusive."""
        runs: list[tuple[int, int]] = []
        for e in self.entries:
            if e.covered:
                continue
            if runs and runs[-1][1] == e.d - 1:
                runs[-1] = (runs[-1][0], e.d)
            else:
                runs.append((e.d, e.d))
        return runs

    def summary_table(self) -> str:
        """Human-readable table of maximal runs with a shared verdict/witness."""
        lines = [
            f"coverage of d in [{self.d_lo}, {self.d_hi}]: "
            f"{self.covered_count}/{len(self.entries)} covered",
            f"{'d range':>16}  {'verdict':<9}  witness k",
        ]
        run_start = None
        run_key = None
        for e in (*self.entries, None):
            key = None if e is None else (e.covered, e.witness_k)
            if key != run_key:
                if run_key is not None:
                    covered, wk = run_key
                    verdict = "covered" if covered else "uncovered"
                    witness = str(wk) if wk is not None else "-"
                    lines.append(f"{run_start:>7}..{prev_d:<7}  {verdict:<9}  {witness}")
                run_start = None if e is None else e.d
                run_key = key
            if e is not None:
                prev_d = e.d
        return "\n".join(lines)


def coverage_scan(d_lo: int, d_hi: int) -> CoverageReport:
    """Coverage verdict for every dimension in [d_lo, d_hi].

    A dimension d is covered when some prime-power k satisfies
    C(4k,2) - 1 <= d and parts_lower_bound(k) > d + 1: the family embeds in a
    d-dimensional affine subspace, and any diameter-1 set in a subspace of
    R^d is a subset of R^d.  Per d the scan keeps the feasible k maximizing
    the bound.
    """
    if not 1 <= d_lo <= d_hi:
        raise ValueError(f"need 1 <= d_lo <= d_hi, got {d_lo}, {d_hi}")
    feasible = []
    k = 1
    while binomial(4 * k, 2) - 1 <= d_hi:
        if is_prime_power(k) is not None:
            feasible.append(bound_report(k))
        k += 1
    feasible.sort(key=lambda r: r.dimension)
    entries = []
    best_k: int | None = None
    best_bound: int | None = None
    idx = 0
    for d in range(d_lo, d_hi + 1):
        while idx < len(feasible) and feasible[idx].dimension <= d:
            rep = feasible[idx]
            if best_bound is None or rep.parts_lower_bound > best_bound:
                best_bound = rep.parts_lower_bound
                best_k = rep.k
            idx += 1
        covered = best_bound is not None and best_bound > d + 1
        entries.append(CoverageEntry(d, covered, best_k, best_bound))
    return CoverageReport(d_lo, d_hi, tuple(entries))


def coverage_json(report: CoverageReport) -> list[dict]:
    """Per-dimension JSON array; witness fields null when uncovered."""
    rows = []
    for e in report.entries:
        rows.append(
            {
                "d": e.d,
                "covered": e.covered,
                "witness_k": e.witness_k,
                "parts_lower_bound": str(e.best_bound) if e.covered else None,
            }
        )
    return rows


def rate_exact(k: int) -> float:
    """parts_lower_bound(k)^(1/sqrt(d)) from the exact integer bound."""
    if not 2 <= k <= EXACT_RATE_K_MAX:
        raise ValueError(f"exact rate path supports 2 <= k <= {EXACT_RATE_K_MAX}, got {k}")
    rep = bound_report(k)
    return math.exp(math.log(rep.parts_lower_bound) / math.sqrt(rep.dimension))


def rate_log_space(k: int) -> float:
    """Log-space rate: the part-count quotient^(1/sqrt(d)) via log_binomial.

    Works for arbitrarily large k.  The ceiling step of parts_lower_bound is
    not representable in log space; its effect on the rate is below 1e-9
    relative once k >= LOG_RATE_AGREEMENT_K_MIN, which is where this path
    and rate_exact are required to agree.
    """
    if k < 2:
        raise ValueError(f"rate requires k >= 2, got {k}")
    m = 4 * k
    d = binomial(m, 2) - 1
    ln_quota = log_binomial(m, 2 * k) - math.log(2.0) - log_binomial(m - 1, k - 1)
    return math.exp(ln_quota / math.sqrt(d))


def asymptotic_rate(k: int) -> float:
    """Growth rate of the part-count bound: exact path up to k=64, log space beyond."""
    if k < 2:
        raise ValueError(f"rate requires k >= 2, got {k}")
    if k <= EXACT_RATE_K_MAX:
        return rate_exact(k)
    return rate_log_space(k)


def rate_threshold_scan(max_exponent: int = 20,
                        threshold: float = 1.203) -> tuple[list[tuple[int, float]], int | None]:
    """Rates at k = 2^i for i = 1..max_exponent, plus the smallest scanned k
    from which every later rate stays above the threshold (None if none)."""
    if max_exponent < 1:
        raise ValueError(f"max_exponent must be >= 1, got {max_exponent}")
    points = [(1 << i, asymptotic_rate(1 << i)) for i in range(1, max_exponent + 1)]
    threshold_k = None
    for k, rate in reversed(points):
        if rate > threshold:
            threshold_k = k
        else:
            break
    return points, threshold_k


def fr_bound(n: int) -> float:
    """Comparison value 1.99^n for families of n/2-subsets, n a multiple of 4."""
    if n < 4 or n % 4:
        raise ValueError(f"n must be a positive multiple of 4, got {n}")
    return 1.99**n
