#!/usr/bin/env python3
"""Chamber census over a range of n, with an optional brute-force check.

Examples:
    python scripts/run_census.py --n-min 3 --n-max 6
    python scripts/run_census.py --n-min 3 --n-max 5 --check-bound 8 --json
"""

import argparse
import json
import sys
import time
from itertools import combinations_with_replacement

from polygonspaces import LengthVector, chamber_signature, enumerate_chambers, is_generic


def brute_force_signatures(n: int, bound: int) -> set:
    found = set()
    for entries in combinations_with_replacement(range(1, bound + 1), n):
        lv = LengthVector(entries)
        if is_generic(lv):
            found.add(chamber_signature(lv))
    return found


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-min", type=int, default=3)
    parser.add_argument("--n-max", type=int, default=6)
    parser.add_argument(
        "--check-bound",
        type=int,
        default=0,
        help="cross-check against all ordered generic integer vectors with "
        "entries up to this bound (0 disables)",
    )
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    docs = []
    for n in range(args.n_min, args.n_max + 1):
        started = time.perf_counter()
        census = enumerate_chambers(n)
        elapsed = time.perf_counter() - started
        doc = census.to_json_obj()
        doc["seconds"] = round(elapsed, 3)
        if args.check_bound:
            brute = brute_force_signatures(n, args.check_bound)
            doc["brute_force_bound"] = args.check_bound
            doc["brute_force_count"] = len(brute)
            doc["brute_force_matches"] = brute == census.signatures()
        docs.append(doc)
        if not args.json:
            line = f"n={n}: {census.count} chambers in {elapsed:.2f}s"
            if args.check_bound:
                verdict = "matches" if doc["brute_force_matches"] else "MISMATCH"
                line += f"  (brute force with entries <= {args.check_bound}: {verdict})"
            print(line)
            for sig, rep in census.chambers:
                print(f"    {rep}  family {sig.family_indices()}")
    if args.json:
        json.dump(docs, sys.stdout, indent=2, sort_keys=True)
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
