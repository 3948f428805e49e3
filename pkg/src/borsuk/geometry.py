"""Constant-weight 0/1 embedding of cut-set families and exact diameter structure.

Point i is the indicator vector of cut-set i over the C(m,2) pair coordinates,
optionally scaled by 1/(2k) so the diameter is exactly 1.  Every geometric
predicate is exact rational arithmetic (entries are 0 or the scale, so squared
distances are hamming distances times scale^2); floats never decide anything.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .construction import cut_set, enumerate_family

__all__ = [
    "DEFAULT_RANK_CAP",
    "AffineReport",
    "DiameterGraph",
    "PointCloud",
    "affine_certificates",
    "diameter_graph",
    "embed",
    "export_cloud_csv",
    "export_cloud_json",
    "export_edges_csv",
]

DEFAULT_RANK_CAP = 5000

# Full pairwise distance scans stop at this k; beyond it the diameter graph
# comes from the overlap criterion alone (scan and criterion are asserted
# equal wherever both run).
_SCAN_K_MAX = 3


@dataclass(frozen=True)
class PointCloud:
    """Indicator-vector embedding of a cut-set family.

    cut_bits[i] is the C(m,2)-bit cut-set of point i; side_masks[i] the vertex
    mask of the originating partition side.  Coordinates are 0 or scale.
    """

    m: int
    k: int
    scale: Fraction
    cut_bits: tuple[int, ...]
    side_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        weight = self.m * self.m // 4
        for bits in self.cut_bits:
            if bits.bit_count() != weight:
                raise ValueError(f"point weight {bits.bit_count()} != {weight}")
        if len(set(self.cut_bits)) != len(self.cut_bits):
            raise ValueError("points must be pairwise distinct")
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    @property
    def n_points(self) -> int:
        return len(self.cut_bits)

    @property
    def ambient_dim(self) -> int:
        return self.m * (self.m - 1) // 2

    @property
    def weight(self) -> int:
        """Nonzero coordinates per point: m^2/4."""
        return self.m * self.m // 4

    def coordinates(self, i: int) -> tuple[Fraction, ...]:
        bits = self.cut_bits[i]
        zero = Fraction(0)
        return tuple(
            self.scale if (bits >> idx) & 1 else zero for idx in range(self.ambient_dim)
        )

    def squared_distance(self, u: int, v: int) -> Fraction:
        """Exact Euclidean squared distance between points u and v.

        Entries are 0 or scale, so this is the symmetric-difference size of
        the two cut-sets times scale^2; for raw clouds it equals
        2*(m^2/4 - |intersection|).
        """
        differing = (self.cut_bits[u] ^ self.cut_bits[v]).bit_count()
        return differing * self.scale * self.scale


def embed(k: int, unit_diameter: bool = False, cap: int | None = None) -> PointCloud:
    """Embed the k-family as 0/1 indicator points, scaled by 1/(2k) if requested."""
    m = 4 * k
    cut_bits = []
    side_masks = []
    for p in enumerate_family(k, cap=cap):
        cut_bits.append(cut_set(p).bits)
        side_masks.append(p.vertex_mask)
    scale = Fraction(1, 2 * k) if unit_diameter else Fraction(1)
    return PointCloud(m, k, scale, tuple(cut_bits), tuple(side_masks))


@dataclass(frozen=True)
class DiameterGraph:
    """Edges exactly at the pairs realizing the maximum squared distance."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    diameter_sq: Fraction

    def degrees(self) -> list[int]:
        degs = [0] * self.n_vertices
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return degs


def _diameter_edges_scan(cloud: PointCloud) -> tuple[tuple[tuple[int, int], ...], int]:
    """Exhaustive pairwise scan; returns (edges, max hamming distance)."""
    bits = cloud.cut_bits
    n = len(bits)
    best = 0
    edges: list[tuple[int, int]] = []
    for u in range(n):
        bu = bits[u]
        for v in range(u + 1, n):
            h = (bu ^ bits[v]).bit_count()
            if h > best:
                best = h
                edges = [(u, v)]
            elif h == best:
                edges.append((u, v))
    return tuple(edges), best


def _diameter_edges_criterion(cloud: PointCloud) -> tuple[tuple[int, int], ...]:
    """Combinatorial criterion: an edge iff the folded side overlap equals k."""
    masks = cloud.side_masks
    half = cloud.m // 2
    k = cloud.k
    n = len(masks)
    edges = []
    for u in range(n):
        mu = masks[u]
        for v in range(u + 1, n):
            raw = (mu & masks[v]).bit_count()
            if min(raw, half - raw) == k:
                edges.append((u, v))
    return tuple(edges)


def diameter_graph(cloud: PointCloud) -> DiameterGraph:
    """Diameter graph of the cloud; raw squared diameter is 4k^2.

    For k <= 3 the edge set is computed both by full pairwise scan and by the
    overlap criterion, and the two must agree; larger families use the
    criterion alone.
    """
    k = cloud.k
    criterion_edges = _diameter_edges_criterion(cloud)
    if k <= _SCAN_K_MAX:
        scan_edges, max_hamming = _diameter_edges_scan(cloud)
        if scan_edges != criterion_edges:
            raise AssertionError(
                f"diameter scan and overlap criterion disagree for k={k}"
            )
        if max_hamming != 4 * k * k:
            raise AssertionError(
                f"max hamming distance {max_hamming} != 4k^2 = {4 * k * k}"
            )
    diameter_sq = (4 * k * k) * cloud.scale * cloud.scale
    return DiameterGraph(cloud.n_points, criterion_edges, diameter_sq)


@dataclass(frozen=True)
class AffineReport:
    """Hyperplane/sphere certificates and (when computed) the exact affine rank."""

    n_points: int
    ambient_dim: int
    coordinate_sum: Fraction
    on_hyperplane: bool
    squared_norm: Fraction
    on_sphere: bool
    affine_rank: int | None
    rank_cap: int


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for a in row:
        g = math.gcd(g, a)
    if g > 1:
        row = [a // g for a in row]
    lead = next((a for a in row if a), 1)
    if lead < 0:
        row = [-a for a in row]
    return row


def _echelon_rank(rows: list[list[int]], ncols: int) -> int:
    """Rank of an integer matrix by fraction-free elimination with gcd reduction.

    Pivot rows are kept mutually reduced (zero at every other pivot column),
    so reducing a candidate row against them is an exact span-membership test.
    """
    pivots: dict[int, list[int]] = {}  # pivot column -> primitive row
    for row in rows:
        r = list(row)
        for col in sorted(pivots):
            f = r[col]
            if f:
                prow = pivots[col]
                lead = prow[col]
                r = [a * lead - b * f for a, b in zip(r, prow)]
        c = next((i for i in range(ncols) if r[i]), None)
        if c is None:
            continue
        r = _primitive(r)
        for col, prow in pivots.items():
            f = prow[c]
            if f:
                lead = r[c]
                pivots[col] = _primitive([a * lead - b * f for a, b in zip(prow, r)])
        pivots[c] = r
        if len(pivots) == ncols:
            break
    return len(pivots)


def affine_certificates(cloud: PointCloud, rank_cap: int = DEFAULT_RANK_CAP) -> AffineReport:
    """Certify the constant-sum hyperplane and constant-norm sphere; report exact rank.

    Every point has exactly m^2/4 coordinates equal to scale, so the
    coordinate sum is m^2/4 * scale and the squared norm m^2/4 * scale^2 for
    all points; together they pin the affine span inside a hyperplane, hence
    affine dimension <= C(m,2) - 1.  When the family has at most rank_cap
    points the exact affine rank is computed by integer row echelon on the
    differences from point 0 (scaling leaves rank unchanged); otherwise the
    rank is omitted and the certificates stand alone.
    """
    weight = cloud.weight
    target_sum = weight * cloud.scale
    target_norm = weight * cloud.scale * cloud.scale
    on_surface = all(bits.bit_count() == weight for bits in cloud.cut_bits)

    rank: int | None = None
    if cloud.n_points <= rank_cap:
        dim = cloud.ambient_dim
        base = cloud.cut_bits[0]
        rows = []
        for bits in cloud.cut_bits[1:]:
            diff = bits ^ base
            if not diff:
                continue
            rows.append(
                [((bits >> c) & 1) - ((base >> c) & 1) for c in range(dim)]
            )
        rank = _echelon_rank(rows, dim)
    return AffineReport(
        n_points=cloud.n_points,
        ambient_dim=cloud.ambient_dim,
        coordinate_sum=target_sum,
        on_hyperplane=on_surface,
        squared_norm=target_norm,
        on_sphere=on_surface,
        affine_rank=rank,
        rank_cap=rank_cap,
    )


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def export_cloud_csv(cloud: PointCloud, path: str) -> None:
    """One row per point; coordinates as exact "p/q" strings."""
    dim = cloud.ambient_dim
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["point", *(f"c{i}" for i in range(dim))])
        for i in range(cloud.n_points):
            writer.writerow([i, *(_fraction_str(c) for c in cloud.coordinates(i))])


def export_cloud_json(cloud: PointCloud, path: str) -> None:
    """Metadata plus coordinate arrays, coordinates as exact "p/q" strings."""
    payload = {
        "m": cloud.m,
        "k": cloud.k,
        "ambient_dim": cloud.ambient_dim,
        "scale": _fraction_str(cloud.scale),
        "weight": cloud.weight,
        "points": [
            [_fraction_str(c) for c in cloud.coordinates(i)]
            for i in range(cloud.n_points)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def export_edges_csv(graph: DiameterGraph, path: str) -> None:
    """Edge list of the diameter graph."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "v"])
        writer.writerows(graph.edges)
