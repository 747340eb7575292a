"""Chamber signatures: comparison, realization and the small-n census.

A signature records which subsets J of {1, ..., n-1} stay short after
adjoining the top index n.  For an ordered vector such a family is
downward closed both under inclusion and under sliding an index to a
smaller unused slot, and it determines the vector's chamber completely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, NamedTuple

from . import exactlp
from .errors import (
    DimensionMismatch,
    MalformedCandidate,
    NotGeneric,
    NotOrdered,
    OutOfRange,
)
from .lengths import (
    LengthVector,
    check_enumeration_width,
    indices_of_mask,
    mask_key,
    subset_sums,
)

CENSUS_MIN_N = 3
CENSUS_MAX_N = 8


def _immediate_predecessors(mask: int) -> Iterator[int]:
    """One deletion or one slide-down of an element; generates the order."""
    m = mask
    while m:
        low = m & -m
        yield mask ^ low
        below = low >> 1
        if below and not mask & below:
            yield (mask ^ low) | below
        m ^= low


def _immediate_successors(mask: int, width: int) -> Iterator[int]:
    for i in range(width):
        bit = 1 << i
        if not mask & bit:
            yield mask | bit
    m = mask
    while m:
        low = m & -m
        up = low << 1
        if up < (1 << width) and not mask & up:
            yield (mask ^ low) | up
        m ^= low


@dataclass(frozen=True)
class ChamberSignature:
    """Family of subsets J of {1..n-1} with J union {n} short."""

    n: int
    short_family: frozenset[int]

    def __post_init__(self) -> None:
        if not isinstance(self.short_family, frozenset):
            object.__setattr__(self, "short_family", frozenset(self.short_family))
        width = self.n - 1
        full = (1 << width) - 1
        fam = self.short_family
        for m in fam:
            if m < 0 or m & ~full:
                raise MalformedCandidate(
                    f"mask {m} is not a subset of 1..{width}"
                )
            for p in _immediate_predecessors(m):
                if p not in fam:
                    raise MalformedCandidate(
                        f"family not downward closed: {indices_of_mask(m)} is a "
                        f"member but {indices_of_mask(p)} is not"
                    )

    @property
    def is_empty_space(self) -> bool:
        return not self.short_family

    @cached_property
    def canonical_bytes(self) -> bytes:
        return json.dumps(
            {"n": self.n, "family": self.family_indices()},
            separators=(",", ":"),
            sort_keys=True,
        ).encode()

    def family_indices(self) -> list[list[int]]:
        return [
            list(indices_of_mask(m))
            for m in sorted(self.short_family, key=mask_key)
        ]


@dataclass(frozen=True)
class StratumSignature:
    """Three-valued refinement of a chamber signature (medians recorded)."""

    n: int
    short_family: frozenset[int]
    median_family: frozenset[int]

    def to_chamber_signature(self) -> ChamberSignature:
        if self.median_family:
            raise NotGeneric("stratum records median subsets; not a chamber")
        return ChamberSignature(self.n, self.short_family)


class ChamberComparison(NamedTuple):
    same: bool
    #: subset containing n that is short for exactly one side, or None
    witness: int | None


def chamber_signature(lv: LengthVector, max_n: int | None = None) -> ChamberSignature:
    if not lv.is_ordered:
        raise NotOrdered(f"{lv} is not nondecreasing")
    check_enumeration_width(lv.n, max_n)
    total = lv.total
    ln = lv.entries[-1]
    members = []
    for m, s in enumerate(subset_sums(lv.entries[:-1])):
        doubled = 2 * (s + ln)
        if doubled == total:
            raise NotGeneric(
                f"{lv} has the median subset {indices_of_mask(m | 1 << (lv.n - 1))}"
            )
        if doubled < total:
            members.append(m)
    return ChamberSignature(lv.n, frozenset(members))


def stratum_signature(lv: LengthVector, max_n: int | None = None) -> StratumSignature:
    if not lv.is_ordered:
        raise NotOrdered(f"{lv} is not nondecreasing")
    check_enumeration_width(lv.n, max_n)
    total = lv.total
    ln = lv.entries[-1]
    short, median = [], []
    for m, s in enumerate(subset_sums(lv.entries[:-1])):
        doubled = 2 * (s + ln)
        if doubled < total:
            short.append(m)
        elif doubled == total:
            median.append(m)
    return StratumSignature(lv.n, frozenset(short), frozenset(median))


def _compare(a: ChamberSignature, b: ChamberSignature) -> ChamberComparison:
    if a.short_family == b.short_family:
        return ChamberComparison(True, None)
    smallest = min(a.short_family ^ b.short_family, key=mask_key)
    return ChamberComparison(False, smallest | 1 << (a.n - 1))


def same_chamber(
    first: LengthVector, second: LengthVector, max_n: int | None = None
) -> ChamberComparison:
    """Compare two ordered generic vectors; the witness is the smallest
    distinguishing subset (index-tuple order) with n adjoined."""
    if first.n != second.n:
        raise DimensionMismatch(f"n={first.n} vs n={second.n}")
    return _compare(chamber_signature(first, max_n), chamber_signature(second, max_n))


def same_chamber_up_to_permutation(
    first: LengthVector, second: LengthVector, max_n: int | None = None
) -> ChamberComparison:
    """Sort both vectors, then compare chambers; sorting loses nothing."""
    if first.n != second.n:
        raise DimensionMismatch(f"n={first.n} vs n={second.n}")
    return _compare(
        chamber_signature(first.ordered()[0], max_n),
        chamber_signature(second.ordered()[0], max_n),
    )


def same_stratum(
    first: LengthVector, second: LengthVector, max_n: int | None = None
) -> bool:
    if first.n != second.n:
        raise DimensionMismatch(f"n={first.n} vs n={second.n}")
    return stratum_signature(first, max_n) == stratum_signature(second, max_n)


# ---------------------------------------------------------------------------
# realization and census


def _maximal_members(fam: frozenset[int], width: int) -> list[int]:
    return [m for m in fam if not any(s in fam for s in _immediate_successors(m, width))]


def _minimal_nonmembers(fam: frozenset[int], width: int) -> list[int]:
    return [
        m
        for m in range(1 << width)
        if m not in fam and all(p in fam for p in _immediate_predecessors(m))
    ]


def realize_signature(candidate: ChamberSignature) -> LengthVector | None:
    """Produce an ordered generic vector with the candidate signature.

    Exact LP over l_1..l_n and one slack: the perimeter is normalized to
    one, dominance-maximal members must stay below half perimeter and
    dominance-minimal non-members above it, each by at least the slack.
    The family is realizable exactly when the optimal slack is positive;
    every other subset constraint follows by monotonicity of ordered
    sums along the dominance order.
    """
    n = candidate.n
    check_enumeration_width(n)
    width = n - 1
    fam = candidate.short_family
    half = Fraction(1, 2)
    zeros = [0] * (n + 1)

    cons = [exactlp.constraint([1] * n + [0], exactlp.EQUAL, 1)]
    row = zeros[:]
    row[0], row[n] = 1, -1
    cons.append(exactlp.constraint(row, exactlp.GREATER_EQUAL, 0))
    for i in range(n - 1):
        row = zeros[:]
        row[i], row[i + 1] = -1, 1
        cons.append(exactlp.constraint(row, exactlp.GREATER_EQUAL, 0))
    for m in _maximal_members(fam, width):
        row = zeros[:]
        for i in range(width):
            if m >> i & 1:
                row[i] = 1
        row[n - 1] = 1
        row[n] = 1
        cons.append(exactlp.constraint(row, exactlp.LESS_EQUAL, half))
    for m in _minimal_nonmembers(fam, width):
        row = zeros[:]
        for i in range(width):
            if m >> i & 1:
                row[i] = 1
        row[n - 1] = 1
        row[n] = -1
        cons.append(exactlp.constraint(row, exactlp.GREATER_EQUAL, half))

    result = exactlp.maximize([0] * n + [1], cons)
    if result.status != exactlp.OPTIMAL or result.objective <= 0:
        return None
    vec = LengthVector.from_rationals(result.solution[:n])
    # the LP certifies every strict inequality, so the round trip is exact
    assert chamber_signature(vec) == candidate
    return vec


@dataclass(frozen=True)
class CensusResult:
    n: int
    chambers: tuple[tuple[ChamberSignature, LengthVector], ...]

    @property
    def count(self) -> int:
        return len(self.chambers)

    def signatures(self) -> set[ChamberSignature]:
        return {sig for sig, _ in self.chambers}

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "chambers": [
                {
                    "signature": sig.family_indices(),
                    "representative": [str(e) for e in rep.entries],
                }
                for sig, rep in self.chambers
            ],
        }


def enumerate_chambers(n: int) -> CensusResult:
    """Complete census of chambers of the ordered cone for small n.

    Walks the lattice of dominance-order ideals along single-set flips,
    starting from the empty family; each new candidate is LP-tested.
    Every chamber of the cone is convex, so the flip graph restricted to
    realizable families is connected and the walk is exhaustive.
    """
    if not CENSUS_MIN_N <= n <= CENSUS_MAX_N:
        raise OutOfRange(
            f"census supports {CENSUS_MIN_N} <= n <= {CENSUS_MAX_N}, got {n}"
        )
    width = n - 1
    start = ChamberSignature(n, frozenset())
    first = realize_signature(start)
    assert first is not None  # the empty-space chamber always exists
    found: dict[ChamberSignature, LengthVector] = {start: first}
    infeasible: set[ChamberSignature] = set()
    frontier = [start]
    while frontier:
        sig = frontier.pop()
        fam = sig.short_family
        flips = [fam - {m} for m in _maximal_members(fam, width)]
        flips += [fam | {m} for m in _minimal_nonmembers(fam, width)]
        for new_fam in flips:
            cand = ChamberSignature(n, frozenset(new_fam))
            if cand in found or cand in infeasible:
                continue
            rep = realize_signature(cand)
            if rep is None:
                infeasible.add(cand)
            else:
                found[cand] = rep
                frontier.append(cand)
    ordered = sorted(found.items(), key=lambda kv: kv[0].canonical_bytes)
    return CensusResult(n, tuple(ordered))
