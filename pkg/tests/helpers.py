"""Shared strategies and independent oracles for the test suite."""

from itertools import combinations_with_replacement

from hypothesis import assume
from hypothesis import strategies as st

from polygonspaces import LengthVector, chamber_signature, is_generic


@st.composite
def length_vectors(draw, min_n=3, max_n=7, max_entry=30, ordered=False, generic=False):
    n = draw(st.integers(min_n, max_n))
    entries = draw(st.lists(st.integers(1, max_entry), min_size=n, max_size=n))
    if ordered:
        entries = sorted(entries)
    lv = LengthVector(tuple(entries))
    if generic:
        assume(is_generic(lv))
    return lv


def oracle_excess(entries, indices):
    """Direct sum comparison, no bit tricks: for cross-checking."""
    inside = sum(entries[i - 1] for i in indices)
    return inside - (sum(entries) - inside)


def brute_force_signatures(n, bound):
    """Every chamber signature hit by ordered generic integer vectors
    with entries up to `bound`: the census ground truth at small n."""
    found = set()
    for entries in combinations_with_replacement(range(1, bound + 1), n):
        lv = LengthVector(entries)
        if is_generic(lv):
            found.add(chamber_signature(lv))
    return found
