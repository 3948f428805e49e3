"""Independent brute-force verification: exhaustive forbidden-intersection
maxima at tiny n, full intersection profiles over a family, and greedy
colorings of the diameter graph as a constructive upper-bound counterpart.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .construction import enumerate_family
from .exactmath import binomial

__all__ = [
    "STRATEGIES",
    "CliqueInstance",
    "ColoringResult",
    "IntersectionProfile",
    "clique_instance",
    "diameter_adjacency",
    "expected_pair_count",
    "export_coloring_json",
    "export_profile_csv",
    "export_witness_json",
    "greedy_color",
    "intersection_profile",
    "max_family_brute",
    "verify_coloring",
    "verify_family",
]

STRATEGIES = ("natural-order", "largest-degree-first", "smallest-last")

_BRUTE_SUPPORTED = (4, 8)
_BRUTE_OPTIONAL = 12
_PROFILE_K_MAX = 4


@dataclass(frozen=True)
class CliqueInstance:
    """Search instance: all n/2-subsets of {0..n-1}; two subsets may share a
    part iff their intersection differs from n/4."""

    n: int
    vertices: tuple[int, ...]  # subset bitmasks, lex order of sorted tuples
    adjacency: tuple[int, ...]  # bitmask over vertex indices

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


def clique_instance(n: int) -> CliqueInstance:
    if n < 4 or n % 4:
        raise ValueError(f"n must be a positive multiple of 4, got {n}")
    masks = []
    for comb in combinations(range(n), n // 2):
        mask = 0
        for v in comb:
            mask |= 1 << v
        masks.append(mask)
    forbidden = n // 4
    count = len(masks)
    adjacency = [0] * count
    for i in range(count):
        mi = masks[i]
        for j in range(i + 1, count):
            if (mi & masks[j]).bit_count() != forbidden:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return CliqueInstance(n, tuple(masks), tuple(adjacency))


def _max_clique(adjacency: tuple[int, ...]) -> int:
    """Exact maximum clique mask by branch and bound.

    Candidates are greedily colored (lowest index first); a branch is cut
    when the current clique plus the candidate's color bound cannot beat the
    incumbent.  Vertex order is fixed, so the search and its result are
    deterministic.
    """
    best_mask = 0
    best_size = 0

    def color_sort(cand: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bound: list[int] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            cls = 0
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                order.append(v)
                bound.append(color)
                cls |= low
                avail &= ~adjacency[v]
                avail ^= low
            rest &= ~cls
        return order, bound

    def expand(rmask: int, rsize: int, cand: int) -> None:
        nonlocal best_mask, best_size
        order, bound = color_sort(cand)
        for idx in range(len(order) - 1, -1, -1):
            if rsize + bound[idx] <= best_size:
                return
            v = order[idx]
            nmask = rmask | (1 << v)
            ncand = cand & adjacency[v]
            if ncand:
                expand(nmask, rsize + 1, ncand)
            elif rsize + 1 > best_size:
                best_size = rsize + 1
                best_mask = nmask
            cand &= ~(1 << v)

    nverts = len(adjacency)
    expand(0, 0, (1 << nverts) - 1)
    return best_mask


def verify_family(n: int, family: list[tuple[int, ...]]) -> None:
    """Direct check: distinct n/2-subsets of {0..n-1}, no intersection of size n/4."""
    forbidden = n // 4
    seen = set()
    for subset in family:
        if len(subset) != n // 2 or len(set(subset)) != len(subset):
            raise AssertionError(f"{subset} is not an n/2-subset for n={n}")
        if any(v < 0 or v >= n for v in subset):
            raise AssertionError(f"{subset} has vertices outside 0..{n - 1}")
        if subset in seen:
            raise AssertionError(f"duplicate member {subset}")
        seen.add(subset)
    for a, b in combinations(family, 2):
        shared = len(set(a) & set(b))
        if shared == forbidden:
            raise AssertionError(f"{a} and {b} intersect in exactly {forbidden}")


def max_family_brute(n: int, allow_large: bool = False) -> tuple[int, list[tuple[int, ...]]]:
    """Exact maximum family of n/2-subsets with no pairwise intersection n/4.

    Exhaustive search; n limited to 4 and 8 (n=12 has 924 vertices and is
    opt-in via allow_large).  The witness is re-verified by direct check
    before returning.
    """
    if n not in _BRUTE_SUPPORTED and not (allow_large and n == _BRUTE_OPTIONAL):
        allowed = f"{_BRUTE_SUPPORTED} (or {_BRUTE_OPTIONAL} with allow_large)"
        raise ValueError(f"max_family_brute supports n in {allowed}, got {n}")
    inst = clique_instance(n)
    mask = _max_clique(inst.adjacency)
    family = []
    bits = mask
    while bits:
        low = bits & -bits
        vmask = inst.vertices[low.bit_length() - 1]
        family.append(tuple(v for v in range(n) if (vmask >> v) & 1))
        bits ^= low
    family.sort()
    verify_family(n, family)
    return len(family), family


@dataclass(frozen=True)
class IntersectionProfile:
    """Histogram of folded overlaps over all unordered family pairs."""

    k: int
    pair_counts: dict[int, int]

    @property
    def total_pairs(self) -> int:
        return sum(self.pair_counts.values())

    def intersection_value(self, a: int) -> int:
        half = 2 * self.k
        return a * a + (half - a) * (half - a)

    @property
    def min_intersection(self) -> int:
        return min(self.intersection_value(a) for a in self.pair_counts)

    @property
    def argmin_a(self) -> int:
        return min(self.pair_counts, key=self.intersection_value)

    def rows(self) -> list[tuple[int, int, int]]:
        return [
            (a, self.intersection_value(a), self.pair_counts[a])
            for a in sorted(self.pair_counts)
        ]


def expected_pair_count(k: int, a: int) -> int:
    """Closed-form pair count for folded overlap a over the whole k-family.

    For a fixed canonical partition there are C(2k,a)*C(2k,2k-a) partners at
    folded overlap a < k and C(2k,k)^2/2 at a = k; summing over the family
    counts each unordered pair twice.
    """
    if not 1 <= a <= k:
        raise ValueError(f"folded overlap must be in [1, {k}], got {a}")
    fam = binomial(4 * k, 2 * k) // 2
    if a < k:
        per_vertex = binomial(2 * k, a) * binomial(2 * k, 2 * k - a)
    else:
        per_vertex = binomial(2 * k, k) ** 2 // 2
    return fam * per_vertex // 2


def _profile_chunk(masks: list[int], half: int, lo: int, hi: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    n = len(masks)
    for i in range(lo, hi):
        mi = masks[i]
        for j in range(i + 1, n):
            raw = (mi & masks[j]).bit_count()
            a = raw if raw <= half - raw else half - raw
            counts[a] = counts.get(a, 0) + 1
    return counts


def intersection_profile(k: int, threads: int = 1, cap: int | None = None) -> IntersectionProfile:
    """Full O(N^2) overlap histogram for k <= 4, with internal consistency checks:
    the minimum intersection is 2k^2, attained only at folded overlap k, and
    every count matches the closed form."""
    if k > _PROFILE_K_MAX:
        raise ValueError(f"intersection_profile supports k <= {_PROFILE_K_MAX}, got {k}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    masks = [p.vertex_mask for p in enumerate_family(k, cap=cap)]
    half = 2 * k
    n = len(masks)
    if threads == 1:
        counts = _profile_chunk(masks, half, 0, n)
    else:
        step = max(1, -(-n // threads))
        ranges = [(lo, min(lo + step, n)) for lo in range(0, n, step)]
        counts = {}
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(
                lambda r: _profile_chunk(masks, half, r[0], r[1]), ranges
            ):
                for a, c in part.items():
                    counts[a] = counts.get(a, 0) + c

    profile = IntersectionProfile(k, counts)
    if profile.total_pairs != n * (n - 1) // 2:
        raise RuntimeError(f"profile covers {profile.total_pairs} pairs, expected C({n},2)")
    if profile.argmin_a != k or profile.min_intersection != 2 * k * k:
        raise RuntimeError(
            f"minimum intersection {profile.min_intersection} at a={profile.argmin_a}, "
            f"expected {2 * k * k} at a={k}"
        )
    for a, count in counts.items():
        if count != expected_pair_count(k, a):
            raise RuntimeError(
                f"count {count} at a={a} differs from closed form "
                f"{expected_pair_count(k, a)}"
            )
    return profile


def diameter_adjacency(k: int, cap: int | None = None) -> list[int]:
    """Diameter-graph adjacency bitmasks: an edge iff folded overlap equals k."""
    masks = [p.vertex_mask for p in enumerate_family(k, cap=cap)]
    half = 2 * k
    n = len(masks)
    adjacency = [0] * n
    for i in range(n):
        mi = masks[i]
        for j in range(i + 1, n):
            raw = (mi & masks[j]).bit_count()
            if raw == k or half - raw == k:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return adjacency


@dataclass(frozen=True)
class ColoringResult:
    """Proper coloring of the diameter graph; colors contiguous from 0."""

    k: int
    strategy: str
    assignment: tuple[int, ...]

    @property
    def color_count(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0


def _vertex_order(adjacency: list[int], strategy: str) -> list[int]:
    n = len(adjacency)
    if strategy == "natural-order":
        return list(range(n))
    degrees = [adjacency[v].bit_count() for v in range(n)]
    if strategy == "largest-degree-first":
        return sorted(range(n), key=lambda v: (-degrees[v], v))
    if strategy == "smallest-last":
        # peel min-degree vertices (ties: lowest index); color in reverse peel order
        alive = (1 << n) - 1
        degs = list(degrees)
        peeled = []
        for _ in range(n):
            v = min(
                (v for v in range(n) if (alive >> v) & 1),
                key=lambda v: (degs[v], v),
            )
            peeled.append(v)
            alive &= ~(1 << v)
            rest = adjacency[v] & alive
            while rest:
                low = rest & -rest
                degs[low.bit_length() - 1] -= 1
                rest ^= low
        peeled.reverse()
        return peeled
    raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def greedy_color(k: int, strategy: str = "natural-order",
                 cap: int | None = None) -> ColoringResult:
    """Greedy proper coloring of the diameter graph for k <= 4.

    Color classes contain no diameter pair, so after unit scaling every part
    has diameter < 1; the color count can never go below parts_lower_bound(k).
    Tie-breaking is lowest index everywhere, making runs deterministic.
    """
    if k > _PROFILE_K_MAX:
        raise ValueError(f"greedy_color supports k <= {_PROFILE_K_MAX}, got {k}")
    adjacency = diameter_adjacency(k, cap=cap)
    n = len(adjacency)
    order = _vertex_order(adjacency, strategy)
    colors = [-1] * n
    for v in order:
        used = 0
        rest = adjacency[v]
        while rest:
            low = rest & -rest
            c = colors[low.bit_length() - 1]
            if c >= 0:
                used |= 1 << c
            rest ^= low
        color = 0
        while (used >> color) & 1:
            color += 1
        colors[v] = color
    result = ColoringResult(k, strategy, tuple(colors))
    verify_coloring(adjacency, result.assignment)
    return result


def verify_coloring(adjacency: list[int], assignment: tuple[int, ...]) -> None:
    """Independent check: no monochromatic edge, colors contiguous from 0."""
    n = len(adjacency)
    if len(assignment) != n:
        raise AssertionError(f"{len(assignment)} colors for {n} vertices")
    used = set(assignment)
    if used != set(range(len(used))):
        raise AssertionError(f"colors not contiguous from 0: {sorted(used)}")
    for u in range(n):
        rest = adjacency[u] >> (u + 1)
        v = u + 1
        while rest:
            if rest & 1 and assignment[u] == assignment[v]:
                raise AssertionError(f"edge ({u}, {v}) is monochromatic")
            rest >>= 1
            v += 1


def export_witness_json(path: str, n: int, size: int, family: list[tuple[int, ...]]) -> None:
    payload = {"n": n, "max": size, "family": [list(s) for s in family]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def export_coloring_json(path: str, result: ColoringResult) -> None:
    payload = {
        "k": result.k,
        "strategy": result.strategy,
        "color_count": result.color_count,
        "assignment": list(result.assignment),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def export_profile_csv(path: str, profile: IntersectionProfile) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "intersection_value", "pair_count"])
        writer.writerows(profile.rows())
