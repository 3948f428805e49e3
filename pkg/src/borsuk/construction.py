"""Canonical equal bipartitions of a 4k-element ground set and their cut-sets.

A partition {A, B} of V = {0..m-1} with |A| = |B| = m/2 is stored by the side
containing vertex 0; that single representative kills the {A,B}/{B,A}
duplication, so a family over parameter k has exactly C(4k, 2k)/2 members.
The cut-set of a partition is a C(m,2)-bit vector with one bit per unordered
pair of vertices, set exactly when the pair crosses the partition.  Pair
{i, j} with i < j lives at bit j*(j-1)//2 + i; the same layout is the on-disk
bit order of the binary export.

Bit vectors are plain Python ints (machine-word limbs under the hood), so
intersection and popcount run at C speed.
"""

from __future__ import annotations

import json
import os
import struct
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

from .exactmath import binomial

__all__ = [
    "DEFAULT_ENUM_CAP",
    "ENUM_CAP_ENV",
    "CutSet",
    "EnumerationCapExceeded",
    "EqualPartition",
    "FamilyHandle",
    "Overlap",
    "PairIndexing",
    "check_enum_cap",
    "cut_set",
    "default_enum_cap",
    "enumerate_family",
    "equal_partition",
    "export_family_binary",
    "export_family_json",
    "family_size",
    "intersection_size",
    "overlap_parameter",
    "pair_index",
    "pair_unindex",
    "partition_rank",
    "partition_unrank",
    "read_family_binary",
]

DEFAULT_ENUM_CAP = 10_000_000
ENUM_CAP_ENV = "BORSUK_ENUM_CAP"

_MAGIC = b"CUTFAM01"
_FORMAT_VERSION = 1
_PAIR_INDEXING_ID = b"colex:j(j-1)/2+i"
_HEADER = struct.Struct("<8sIIIQ16s")


class EnumerationCapExceeded(RuntimeError):
    """The requested family is larger than the configured enumeration cap."""


def default_enum_cap() -> int:
    """Enumeration cap: BORSUK_ENUM_CAP if set, else 10^7 family members."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError(f"{ENUM_CAP_ENV} must be positive, got {cap}")
    return cap


def pair_index(i: int, j: int, m: int) -> int:
    """Bit position of the unordered pair {i, j}, 0 <= i < j < m."""
    if not 0 <= i < j < m:
        raise ValueError(f"need 0 <= i < j < m, got i={i}, j={j}, m={m}")
    return j * (j - 1) // 2 + i


def pair_unindex(idx: int, m: int) -> tuple[int, int]:
    """Inverse of pair_index: the pair (i, j) stored at bit idx."""
    total = m * (m - 1) // 2
    if not 0 <= idx < total:
        raise ValueError(f"pair index {idx} out of range [0, {total}) for m={m}")
    from math import isqrt

    j = (isqrt(8 * idx + 1) + 1) // 2
    i = idx - j * (j - 1) // 2
    return i, j


@dataclass(frozen=True)
class PairIndexing:
    """Bijection between unordered vertex pairs of {0..m-1} and bit positions."""

    m: int

    @property
    def total(self) -> int:
        return self.m * (self.m - 1) // 2

    def index(self, i: int, j: int) -> int:
        return pair_index(i, j, self.m)

    def unindex(self, idx: int) -> tuple[int, int]:
        return pair_unindex(idx, self.m)


@dataclass(frozen=True)
class EqualPartition:
    """Unordered equal bipartition of {0..m-1}, stored by the side holding 0."""

    m: int
    side_a: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.m
        side = self.side_a
        if m < 2 or m % 2:
            raise ValueError(f"ground-set size must be even and >= 2, got {m}")
        if len(side) != m // 2:
            raise ValueError(f"side must have {m // 2} vertices, got {len(side)}")
        if list(side) != sorted(set(side)):
            raise ValueError("side must be strictly sorted")
        if side[0] != 0:
            raise ValueError("canonical side must contain vertex 0")
        if side[-1] >= m:
            raise ValueError(f"vertex {side[-1]} out of range for m={m}")

    @cached_property
    def vertex_mask(self) -> int:
        mask = 0
        for v in self.side_a:
            mask |= 1 << v
        return mask

    @property
    def side_b(self) -> tuple[int, ...]:
        inside = set(self.side_a)
        return tuple(v for v in range(self.m) if v not in inside)


def equal_partition(m: int, side: tuple[int, ...] | list[int]) -> EqualPartition:
    """Canonicalize either side of an equal bipartition (complement if 0 is absent)."""
    chosen = tuple(sorted(set(side)))
    if len(chosen) != len(tuple(side)):
        raise ValueError("side contains duplicate vertices")
    if not chosen or chosen[0] != 0:
        inside = set(chosen)
        chosen = tuple(v for v in range(m) if v not in inside)
    return EqualPartition(m, chosen)


@dataclass(frozen=True)
class CutSet:
    """Bit vector over the C(m,2) unordered pairs; set bits cross the partition."""

    m: int
    bits: int

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()

    def pairs(self) -> Iterator[tuple[int, int]]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield pair_unindex(low.bit_length() - 1, self.m)
            bits ^= low


def cut_set(p: EqualPartition) -> CutSet:
    """Cut-set of an equal bipartition; popcount is always m*m/4."""
    m = p.m
    mask = p.vertex_mask
    bits = 0
    for j in range(1, m):
        in_j = (mask >> j) & 1
        base = j * (j - 1) // 2
        for i in range(j):
            if ((mask >> i) & 1) != in_j:
                bits |= 1 << (base + i)
    return CutSet(m, bits)


def family_size(k: int) -> int:
    """Number of canonical equal bipartitions of a 4k ground set: C(4k,2k)/2."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return binomial(4 * k, 2 * k) // 2


@dataclass(frozen=True)
class FamilyHandle:
    """Cut-set family for one parameter k: m = 4k, C(4k,2k)/2 members."""

    k: int

    @property
    def m(self) -> int:
        return 4 * self.k

    @property
    def count(self) -> int:
        return family_size(self.k)

    def enumerate(self, cap: int | None = None, start: int = 0,
                  stop: int | None = None) -> Iterator[EqualPartition]:
        return enumerate_family(self.k, cap=cap, start=start, stop=stop)


def check_enum_cap(k: int, cap: int | None = None) -> int:
    """Family size for k, or EnumerationCapExceeded when it is above the cap."""
    count = family_size(k)
    limit = default_enum_cap() if cap is None else cap
    if count > limit:
        raise EnumerationCapExceeded(
            f"family for k={k} has {count} members, above the cap of {limit}"
        )
    return count


def enumerate_family(k: int, cap: int | None = None, start: int = 0,
                     stop: int | None = None) -> Iterator[EqualPartition]:
    """Canonical partitions in colexicographic order of side_a minus {0}.

    The stream is deterministic and restartable: start/stop select the chunk
    of colex ranks [start, stop), so disjoint chunks can run concurrently and
    concatenate to the full family.  Refuses families larger than the cap
    (default from BORSUK_ENUM_CAP, else 10^7).
    """
    count = check_enum_cap(k, cap)
    if stop is None:
        stop = count
    if not 0 <= start <= count:
        raise ValueError(f"start {start} out of range [0, {count}]")
    stop = min(stop, count)
    if start >= stop:
        return
    m = 4 * k
    t = 2 * k - 1
    c = list(partition_unrank(k, start).side_a[1:])
    for _ in range(stop - start):
        yield EqualPartition(m, (0, *c))
        # colex successor: bump the lowest extendable slot, reset those below
        j = 0
        while j + 1 < t and c[j] + 1 == c[j + 1]:
            c[j] = j + 1
            j += 1
        c[j] += 1


def partition_rank(p: EqualPartition) -> int:
    """Colex rank of a canonical partition within its family's enumeration."""
    return sum(binomial(s - 1, i) for i, s in enumerate(p.side_a[1:], start=1))


def partition_unrank(k: int, rank: int) -> EqualPartition:
    """Canonical partition at a given colex rank (inverse of partition_rank)."""
    count = family_size(k)
    if not 0 <= rank < count:
        raise ValueError(f"rank {rank} out of range [0, {count}) for k={k}")
    m = 4 * k
    rem = rank
    side = []
    u = m - 2
    for i in range(2 * k - 1, 0, -1):
        while binomial(u, i) > rem:
            u -= 1
        rem -= binomial(u, i)
        side.append(u + 1)
        u -= 1
    side.reverse()
    return EqualPartition(m, (0, *side))


class Overlap(NamedTuple):
    """Raw |A intersect C| plus the fold-invariant representative min(a, 2k-a)."""

    raw: int
    folded: int


def _require_same_m(p: EqualPartition, q: EqualPartition) -> None:
    if p.m != q.m:
        raise ValueError(f"partitions have different ground sets: m={p.m} vs m={q.m}")


def overlap_parameter(p: EqualPartition, q: EqualPartition) -> Overlap:
    """Overlap of the canonical sides; folded value is 0 iff p == q."""
    _require_same_m(p, q)
    raw = (p.vertex_mask & q.vertex_mask).bit_count()
    half = p.m // 2
    return Overlap(raw, min(raw, half - raw))


def intersection_size(p: EqualPartition, q: EqualPartition, check: bool = False) -> int:
    """|cut_set(p) & cut_set(q)| via the overlap formula a^2 + (2k-a)^2.

    The formula is invariant under a <-> 2k-a, so side labelling is
    immaterial.  With check=True the value is recomputed by bit-vector AND +
    popcount and the two must agree.
    """
    _require_same_m(p, q)
    half = p.m // 2
    a = overlap_parameter(p, q).folded
    value = a * a + (half - a) * (half - a)
    if check:
        counted = (cut_set(p).bits & cut_set(q).bits).bit_count()
        if counted != value:
            raise AssertionError(
                f"formula {value} != popcount {counted} for overlap {a} at m={p.m}"
            )
    return value


def _cut_bytes(m: int) -> int:
    return (m * (m - 1) // 2 + 7) // 8


def export_family_binary(path: str, k: int, cap: int | None = None) -> int:
    """Write the family as header + packed little-endian cut-set bit vectors.

    Header layout (little-endian): magic "CUTFAM01", u32 version, u32 m,
    u32 k, u64 count, 16-byte pair-indexing id.  Each member occupies
    ceil(C(m,2)/8) bytes, bit i of the vector at byte i//8, bit i%8.
    Returns the number of bytes written.
    """
    m = 4 * k
    count = check_enum_cap(k, cap)
    nbytes = _cut_bytes(m)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _FORMAT_VERSION, m, k, count, _PAIR_INDEXING_ID))
        for p in enumerate_family(k, cap=cap):
            fh.write(cut_set(p).bits.to_bytes(nbytes, "little"))
    return _HEADER.size + count * nbytes


def read_family_binary(path: str) -> tuple[int, int, list[CutSet]]:
    """Read a binary family export back as (m, k, cut sets), validating the header."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, version, m, k, count, indexing = _HEADER.unpack(header)
        if magic != _MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != _FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported version {version}")
        if indexing != _PAIR_INDEXING_ID:
            raise ValueError(f"{path}: unknown pair indexing {indexing!r}")
        nbytes = _cut_bytes(m)
        cuts = []
        for _ in range(count):
            chunk = fh.read(nbytes)
            if len(chunk) != nbytes:
                raise ValueError(f"{path}: truncated member data")
            cuts.append(CutSet(m, int.from_bytes(chunk, "little")))
        if fh.read(1):
            raise ValueError(f"{path}: trailing data after {count} members")
    return m, k, cuts


def export_family_json(path: str, k: int, cap: int | None = None) -> int:
    """Write the family as JSON with explicit side_a lists (small k only)."""
    check_enum_cap(k, cap)
    members = [list(p.side_a) for p in enumerate_family(k, cap=cap)]
    payload = {
        "m": 4 * k,
        "k": k,
        "count": len(members),
        "pair_indexing": _PAIR_INDEXING_ID.decode("ascii"),
        "side_a": members,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")
    return len(members)
