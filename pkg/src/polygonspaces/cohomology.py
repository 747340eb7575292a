"""Mod-2 Betti tables, cohomology-ring presentations, the pair verdict.

Everything here reduces to exact counts of short/median/long subsets
containing the top index, so the results are integers computed without
any rounding.  The classification needs d >= 3 throughout; d = 2 is a
different theory and is rejected explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chambers import chamber_signature, same_chamber_up_to_permutation
from .errors import (
    DimensionMismatch,
    NotOrdered,
    SearchTooLarge,
    UnsupportedDimension,
)
from .lengths import (
    Kind,
    LengthVector,
    check_enumeration_width,
    classify_subset,
    indices_of_mask,
    mask_from_indices,
    mask_key,
    subset_sums,
)

MAX_BIJECTION_VARIABLES = 12


def _require_dimension(d: int) -> None:
    if d < 3:
        raise UnsupportedDimension(f"the classification needs d >= 3, got {d}")


def short_median_counts(
    lv: LengthVector, max_n: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """a_k / b_k: short / median subsets containing n with k+1 elements."""
    if not lv.is_ordered:
        raise NotOrdered(f"{lv} is not nondecreasing")
    check_enumeration_width(lv.n, max_n)
    n, total = lv.n, lv.total
    ln = lv.entries[-1]
    a = [0] * n
    b = [0] * n
    for m, s in enumerate(subset_sums(lv.entries[:-1])):
        doubled = 2 * (s + ln)
        if doubled < total:
            a[m.bit_count()] += 1
        elif doubled == total:
            b[m.bit_count()] += 1
    return tuple(a), tuple(b)


@dataclass(frozen=True)
class BettiTable:
    n: int
    d: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    dims: dict[int, int]  # degree -> Z2 dimension, zero entries omitted
    manifold_dim: int
    note: str | None = None

    def dim(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def poincare_coefficients(self) -> list[int]:
        return [self.dim(i) for i in range(self.manifold_dim + 1)]

    @property
    def euler(self) -> int:
        return sum(v if deg % 2 == 0 else -v for deg, v in self.dims.items())

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "manifold_dim": self.manifold_dim,
            "a": list(self.a),
            "b": list(self.b),
            "betti": {str(deg): v for deg, v in sorted(self.dims.items())},
            "euler": self.euler,
            "note": self.note,
        }


def betti_table(lv: LengthVector, d: int, max_n: int | None = None) -> BettiTable:
    """Z2 Betti numbers from the a/b counts; ordering required, genericity not.

    Degrees (d-1)k carry a_k+b_k+a_{k-1}+b_{k-1} for k = 0..n-2, degrees
    (d-1)k-1 carry a_{n-k-2}+a_{n-k-1} for k = 1..n-1, everything else
    vanishes.  Nongeneric input is accepted and flagged, since the count
    formula does not need genericity.
    """
    _require_dimension(d)
    a, b = short_median_counts(lv, max_n)
    n = lv.n

    def av(k: int) -> int:
        return a[k] if 0 <= k < n else 0

    def bv(k: int) -> int:
        return b[k] if 0 <= k < n else 0

    dims: dict[int, int] = {}
    for k in range(n - 1):
        v = av(k) + bv(k) + av(k - 1) + bv(k - 1)
        if v:
            dims[(d - 1) * k] = v
    for k in range(1, n):
        v = av(n - k - 2) + av(n - k - 1)
        if v:
            dims[(d - 1) * k - 1] = v
    note = None if not any(b) else "nongeneric: the space may be singular"
    return BettiTable(n, d, a, b, dims, (n - 1) * (d - 1) - 1, note)


def poincare_polynomial(lv: LengthVector, d: int, max_n: int | None = None) -> list[int]:
    """Coefficient list of sum dims[i] t^i, length manifold_dim + 1."""
    return betti_table(lv, d, max_n).poincare_coefficients()


def euler_characteristic(lv: LengthVector, d: int, max_n: int | None = None) -> int:
    return betti_table(lv, d, max_n).euler


# ---------------------------------------------------------------------------
# ring presentations


@dataclass(frozen=True)
class RingPresentation:
    """Exterior generators Z_1..Z_n of degree d-1 modulo squares and the
    minimal monomials Z_J with J union {n} long, J inside {1..n-1}."""

    n: int
    d: int
    pruned: tuple[int, ...]  # variables Z_j with {j, n} long
    minimal_generators: tuple[int, ...]  # inclusion-antichain of masks

    @property
    def generator_degree(self) -> int:
        return self.d - 1

    @property
    def is_zero_ring(self) -> bool:
        return 0 in self.minimal_generators

    def kept_variables(self) -> tuple[int, ...]:
        """Variables surviving pruning, the top one always included."""
        dropped = set(self.pruned)
        return tuple(j for j in range(1, self.n) if j not in dropped) + (self.n,)

    def pruned_generators(self) -> tuple[int, ...]:
        """Minimal generators supported on the kept variables."""
        pruned_mask = mask_from_indices(self.pruned)
        return tuple(m for m in self.minimal_generators if not m & pruned_mask)

    def to_json_obj(self) -> dict:
        return {
            "pruned": list(self.pruned),
            "generators": [list(indices_of_mask(m)) for m in self.minimal_generators],
        }


def ring_presentation(lv: LengthVector, d: int, max_n: int | None = None) -> RingPresentation:
    if not lv.is_ordered:
        raise NotOrdered(f"{lv} is not nondecreasing")
    _require_dimension(d)
    check_enumeration_width(lv.n, max_n)
    n, total = lv.n, lv.total
    ln = lv.entries[-1]
    long_fam = {
        m
        for m, s in enumerate(subset_sums(lv.entries[:-1]))
        if 2 * (s + ln) > total
    }
    minimal = []
    for m in long_fam:
        rest = m
        is_min = True
        while rest:
            low = rest & -rest
            if m ^ low in long_fam:
                is_min = False
                break
            rest ^= low
        if is_min:
            minimal.append(m)
    minimal.sort(key=mask_key)
    pruned = tuple(j for j in range(1, n) if 1 << (j - 1) in long_fam)
    return RingPresentation(n, d, pruned, tuple(minimal))


def quotient_basis_dimensions(
    lv: LengthVector, d: int, max_n: int | None = None
) -> dict[int, int]:
    """Dimension of the quotient in degree (d-1)k, keyed by k.

    Counts the square-free monomials Z_S killed by no ideal generator,
    i.e. the S with S union {n} short or median; this is the independent
    oracle for the Betti numbers in degrees divisible by d-1.
    """
    if not lv.is_ordered:
        raise NotOrdered(f"{lv} is not nondecreasing")
    _require_dimension(d)
    check_enumeration_width(lv.n, max_n)
    total = lv.total
    ln = lv.entries[-1]
    counts: dict[int, int] = {}
    for m, s in enumerate(subset_sums(lv.entries[:-1])):
        if 2 * (s + ln) <= total:
            # S = J and S = J union {n} both survive
            k = m.bit_count()
            counts[k] = counts.get(k, 0) + 1
            counts[k + 1] = counts.get(k + 1, 0) + 1
    return {k: v for k, v in sorted(counts.items()) if v}


def rings_isomorphic_bruteforce(
    first: RingPresentation,
    second: RingPresentation,
    max_variables: int = MAX_BIJECTION_VARIABLES,
) -> bool:
    """Exhaustive search for a variable bijection matching the generator
    antichains of the pruned presentations."""
    if first.is_zero_ring or second.is_zero_ring:
        return first.is_zero_ring and second.is_zero_ring
    vars_a = first.kept_variables()
    vars_b = second.kept_variables()
    if len(vars_a) != len(vars_b):
        return False
    m = len(vars_a)
    if m > max_variables:
        raise SearchTooLarge(
            f"{m} variables exceed the bijection-search cap {max_variables}"
        )
    pos_a = {v: i for i, v in enumerate(vars_a)}
    pos_b = {v: i for i, v in enumerate(vars_b)}
    gens_a = [
        frozenset(pos_a[j] for j in indices_of_mask(g))
        for g in first.pruned_generators()
    ]
    gens_b = {
        frozenset(pos_b[j] for j in indices_of_mask(g))
        for g in second.pruned_generators()
    }
    if len(gens_a) != len(gens_b):
        return False
    if sorted(len(g) for g in gens_a) != sorted(len(g) for g in gens_b):
        return False

    def profile(pos: int, gens) -> tuple[int, ...]:
        return tuple(sorted(len(g) for g in gens if pos in g))

    prof_a = [profile(i, gens_a) for i in range(m)]
    prof_b = [profile(i, gens_b) for i in range(m)]
    if sorted(prof_a) != sorted(prof_b):
        return False

    # most constrained variables first
    order = sorted(range(m), key=lambda i: (-len(prof_a[i]), prof_a[i]))
    image = [-1] * m
    used = [False] * m

    def consistent(depth: int) -> bool:
        assigned = set(order[: depth + 1])
        for g in gens_a:
            if g <= assigned and frozenset(image[i] for i in g) not in gens_b:
                return False
        return True

    def search(depth: int) -> bool:
        if depth == m:
            return {frozenset(image[i] for i in g) for g in gens_a} == gens_b
        v = order[depth]
        for w in range(m):
            if not used[w] and prof_b[w] == prof_a[v]:
                image[v] = w
                used[w] = True
                if consistent(depth) and search(depth + 1):
                    return True
                used[w] = False
                image[v] = -1
        return False

    return search(0)


# ---------------------------------------------------------------------------
# the pair verdict


@dataclass(frozen=True)
class PairVerdict:
    diffeomorphic: bool
    betti_equal: bool
    witness: int | None
    notes: str = ""


def classify_pair(
    first: LengthVector, second: LengthVector, d: int, max_n: int | None = None
) -> PairVerdict:
    """Equivalence verdict for two generic vectors of the same n.

    The verdict is decided by the chamber comparison after sorting; the
    Betti comparison runs independently and can agree or disagree.
    """
    _require_dimension(d)
    if first.n != second.n:
        raise DimensionMismatch(f"n={first.n} vs n={second.n}")
    s1 = first.ordered()[0]
    s2 = second.ordered()[0]
    cmp = same_chamber_up_to_permutation(s1, s2, max_n)
    betti_equal = betti_table(s1, d, max_n).dims == betti_table(s2, d, max_n).dims
    if cmp.same:
        notes = "same chamber after sorting"
    elif betti_equal:
        notes = "different chambers despite identical Betti tables"
    else:
        notes = "different chambers"
    return PairVerdict(cmp.same, betti_equal, cmp.witness, notes)


def recognize_special(lv: LengthVector, d: int, max_n: int | None = None) -> str | None:
    """Tag the two chamber families whose manifolds are named products.

    "stiefel_times_spheres": nonempty with {n-2, n-1} long, the unique
    chamber where the degree d-2 Betti number is one.  "sphere_product":
    the chamber where only the singleton {n} is short, n >= 4.
    """
    _require_dimension(d)
    sig = chamber_signature(lv, max_n)  # enforces ordered + generic
    if sig.is_empty_space:
        return None
    n = lv.n
    if classify_subset(lv, mask_from_indices((n - 2, n - 1))).kind is Kind.LONG:
        return "stiefel_times_spheres"
    if n >= 4 and sig.short_family == frozenset({0}):
        return "sphere_product"
    return None
