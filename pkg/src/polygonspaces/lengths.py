"""Exact side-length arithmetic: length vectors, subset sums, genericity.

Subsets of {1, ..., n} are plain ints: bit j-1 set <=> index j in the
subset.  Every length vector is stored in its coprime positive integer
normal form, so all subset classification is scale invariant and exact;
no floating point is used anywhere in this module.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    EntryNotPositive,
    MalformedNumber,
    NotOrdered,
    OutOfRange,
    TooFewEntries,
)

#: default guard on 2^(n-1) subset scans, overridable per call via ``max_n``
DEFAULT_MAX_ENUM_N = 24


def check_enumeration_width(n: int, max_n: int | None = None) -> None:
    """Refuse exponential scans beyond the configured cap."""
    limit = DEFAULT_MAX_ENUM_N if max_n is None else max_n
    if n > limit:
        raise OutOfRange(
            f"n={n} exceeds the subset-enumeration cap {limit}; "
            "pass a larger max_n to override"
        )


# ---------------------------------------------------------------------------
# subset masks


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"subset indices are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def indices_of_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def complement_mask(mask: int, n: int) -> int:
    return ~mask & ((1 << n) - 1)


def mask_key(mask: int) -> tuple[int, ...]:
    """Sort key realizing the index-tuple lexicographic order on subsets."""
    return indices_of_mask(mask)


def subset_sums(entries: Sequence[int]) -> list[int]:
    """Sums over all subsets of ``entries``, indexed by bitmask.

    Cost and memory are O(2^len(entries)); callers guard the width.  The
    doubling table runs in int64 when the total provably fits, falling
    back to exact big ints otherwise.
    """
    k = len(entries)
    total = sum(entries)
    if 2 * total < 2**63:
        table = np.zeros(1 << k, dtype=np.int64)
        for i, e in enumerate(entries):
            step = 1 << i
            table[step : step << 1] = table[:step] + e
        return table.tolist()
    sums = [0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + entries[low.bit_length() - 1]
    return sums


# ---------------------------------------------------------------------------
# length vectors


class Kind(Enum):
    SHORT = "short"
    MEDIAN = "median"
    LONG = "long"


@dataclass(frozen=True)
class SubsetClass:
    kind: Kind
    excess: int


@dataclass(frozen=True)
class LengthVector:
    """Positive side lengths in coprime integer normal form."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        if len(entries) < 3:
            raise TooFewEntries(f"need at least 3 sides, got {len(entries)}")
        if any(e <= 0 for e in entries):
            raise EntryNotPositive(f"side lengths must be positive: {entries}")
        g = math.gcd(*entries)
        if g != 1:
            entries = tuple(e // g for e in entries)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rationals(cls, values: Iterable[Fraction | int | str]) -> "LengthVector":
        """Build from exact rationals by clearing denominators."""
        values = list(values)
        if any(isinstance(v, float) for v in values):
            # a binary float is already corrupted; demand "0.15" instead
            raise MalformedNumber("floats are not exact; pass strings or Fractions")
        try:
            fracs = [Fraction(v) for v in values]
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedNumber(f"not a rational: {exc}") from exc
        if len(fracs) < 3:
            raise TooFewEntries(f"need at least 3 sides, got {len(fracs)}")
        if any(f <= 0 for f in fracs):
            raise EntryNotPositive(f"side lengths must be positive: {fracs}")
        denom = math.lcm(*(f.denominator for f in fracs))
        return cls(tuple(int(f * denom) for f in fracs))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    @property
    def is_ordered(self) -> bool:
        return all(a <= b for a, b in zip(self.entries, self.entries[1:]))

    def ordered(self) -> tuple["LengthVector", tuple[int, ...]]:
        """Sorted copy plus the 1-based source index of every sorted slot."""
        perm = sorted(range(self.n), key=lambda i: (self.entries[i], i))
        return (
            LengthVector(tuple(self.entries[i] for i in perm)),
            tuple(i + 1 for i in perm),
        )

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


_TOKEN_SPLIT = re.compile(r"[,\s]+")


def parse_length_vector(text: str) -> LengthVector:
    """Parse comma/whitespace separated rationals ("3/20", "0.15", "2").

    Decimal strings are converted exactly, never through binary floats.
    """
    tokens = [t for t in _TOKEN_SPLIT.split(text.strip()) if t]
    if not tokens:
        raise TooFewEntries("no entries found")
    values = []
    for tok in tokens:
        try:
            values.append(Fraction(tok))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedNumber(f"cannot parse {tok!r} as a rational") from exc
    return LengthVector.from_rationals(values)


# ---------------------------------------------------------------------------
# subset classification


def excess(lv: LengthVector, mask: int) -> int:
    """Subset sum minus complement sum, exactly."""
    if mask < 0 or mask >> lv.n:
        raise ValueError(f"mask {mask} outside subsets of 1..{lv.n}")
    s = sum(e for i, e in enumerate(lv.entries) if mask >> i & 1)
    return 2 * s - lv.total


def classify_subset(lv: LengthVector, mask: int) -> SubsetClass:
    e = excess(lv, mask)
    if e < 0:
        return SubsetClass(Kind.SHORT, e)
    if e > 0:
        return SubsetClass(Kind.LONG, e)
    return SubsetClass(Kind.MEDIAN, e)


def is_generic(lv: LengthVector, max_n: int | None = None) -> bool:
    """True when no subset sums to exactly half the perimeter.

    Only the 2^(n-1) subsets containing n are scanned; a subset is median
    iff its complement is.
    """
    total = lv.total
    if total % 2:  # an odd integer total cannot split in half
        return True
    check_enumeration_width(lv.n, max_n)
    half = total // 2
    ln = lv.entries[-1]
    return all(s + ln != half for s in subset_sums(lv.entries[:-1]))


def long_subsets_containing_n(
    lv: LengthVector, max_n: int | None = None
) -> Iterator[int]:
    """Yield every long subset containing index n, in ascending mask order."""
    if not lv.is_ordered:
        raise NotOrdered("the long-subset stream requires an ordered vector")
    check_enumeration_width(lv.n, max_n)
    total = lv.total
    ln = lv.entries[-1]
    hi = 1 << (lv.n - 1)
    for m, s in enumerate(subset_sums(lv.entries[:-1])):
        if 2 * (s + ln) > total:
            yield m | hi
