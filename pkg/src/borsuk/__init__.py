"""Cut-set families of equal bipartitions, exact intersection bounds, and the
dimension scans locating counterexamples to the d+1 partition conjecture."""

from .bounds import (
    BoundReport,
    CoverageReport,
    asymptotic_rate,
    bound_report,
    coverage_scan,
    fr_bound,
    fw_upper_bound,
    min_counterexample_k,
)
from .construction import (
    CutSet,
    EnumerationCapExceeded,
    EqualPartition,
    FamilyHandle,
    cut_set,
    enumerate_family,
    family_size,
    intersection_size,
    overlap_parameter,
    pair_index,
    pair_unindex,
)
from .exactmath import PrimePowerWitness, binomial, ceil_div, is_prime_power, log_binomial
from .geometry import affine_certificates, diameter_graph, embed
from .oracle import greedy_color, intersection_profile, max_family_brute

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CoverageReport",
    "CutSet",
    "EnumerationCapExceeded",
    "EqualPartition",
    "FamilyHandle",
    "PrimePowerWitness",
    "affine_certificates",
    "asymptotic_rate",
    "binomial",
    "bound_report",
    "ceil_div",
    "coverage_scan",
    "cut_set",
    "diameter_graph",
    "embed",
    "enumerate_family",
    "family_size",
    "fr_bound",
    "fw_upper_bound",
    "greedy_color",
    "intersection_profile",
    "intersection_size",
    "is_prime_power",
    "log_binomial",
    "max_family_brute",
    "min_counterexample_k",
    "overlap_parameter",
    "pair_index",
    "pair_unindex",
]
