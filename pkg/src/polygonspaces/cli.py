"""Command-line surface: betti, ring, compare, census, verify, classify-file.

Exit codes: 0 success, 1 input error, 2 mathematically empty result
(empty space), 3 internal limits (search caps, census range).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import __version__
from .chambers import enumerate_chambers
from .cohomology import (
    PairVerdict,
    betti_table,
    classify_pair,
    recognize_special,
    ring_presentation,
)
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    EntryNotPositive,
    MalformedCandidate,
    MalformedNumber,
    NotGeneric,
    NotOrdered,
    OutOfRange,
    SearchTooLarge,
    TooFewEntries,
    UnsupportedDimension,
)
from .lengths import LengthVector, indices_of_mask, parse_length_vector
from .morse import (
    EmptySpaceCertificate,
    critical_data,
    find_polygon,
    jacobian_rank,
    lacunary_consistency,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EMPTY = 2
EXIT_LIMIT = 3

_INPUT_ERRORS = (
    MalformedNumber,
    EntryNotPositive,
    TooFewEntries,
    NotOrdered,
    NotGeneric,
    DimensionMismatch,
    UnsupportedDimension,
    MalformedCandidate,
    OSError,
)
_LIMIT_ERRORS = (OutOfRange, SearchTooLarge, ConvergenceFailure)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # keep exit codes ours
        raise _UsageError(message)


def _fmt_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in indices_of_mask(mask)) + "}"


def _emit_json(doc: dict, out: TextIO) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _require_d(args: argparse.Namespace) -> int:
    if args.d < 3:
        raise _UsageError(f"--d must be at least 3, got {args.d}")
    return args.d


def _read_vector_file(path: str) -> list[LengthVector]:
    vectors = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if line:
                vectors.append(parse_length_vector(line))
    return vectors


# ---------------------------------------------------------------------------
# subcommands


def _cohomology_doc(lv: LengthVector, d: int, max_n: int | None) -> tuple[dict, bool]:
    table = betti_table(lv, d, max_n)
    ring = ring_presentation(lv, d, max_n)
    doc = table.to_json_obj()
    doc["ring"] = ring.to_json_obj()
    empty = not table.dims
    return doc, empty


def _cmd_betti(args: argparse.Namespace, out: TextIO) -> int:
    d = _require_d(args)
    lv = parse_length_vector(args.l).ordered()[0]
    doc, empty = _cohomology_doc(lv, d, args.max_n)
    if args.json:
        _emit_json(doc, out)
    else:
        out.write(f"vector {lv}  n={lv.n} d={d}  manifold dim {doc['manifold_dim']}\n")
        out.write(f"a = {doc['a']}\n")
        out.write(f"b = {doc['b']}\n")
        if empty:
            out.write("all Betti numbers vanish: the space is empty\n")
        for deg, dim in sorted(doc["betti"].items(), key=lambda kv: int(kv[0])):
            out.write(f"betti[{deg}] = {dim}\n")
        out.write(f"euler = {doc['euler']}\n")
        if doc["note"]:
            out.write(f"note: {doc['note']}\n")
        try:
            tag = recognize_special(lv, d, args.max_n)
        except NotGeneric:
            tag = None
        if tag:
            out.write(f"special chamber: {tag}\n")
    return EXIT_EMPTY if empty else EXIT_OK


def _cmd_ring(args: argparse.Namespace, out: TextIO) -> int:
    d = _require_d(args)
    lv = parse_length_vector(args.l).ordered()[0]
    doc, empty = _cohomology_doc(lv, d, args.max_n)
    if args.json:
        _emit_json(doc, out)
    else:
        ring = doc["ring"]
        out.write(f"vector {lv}  n={lv.n} d={d}\n")
        out.write(f"generator degree {d - 1}, variables Z1..Z{lv.n}\n")
        pruned = ", ".join(f"Z{j}" for j in ring["pruned"]) or "none"
        out.write(f"pruned variables: {pruned}\n")
        if empty:
            out.write("minimal generators: 1 (the quotient is the zero ring)\n")
        else:
            gens = (
                ", ".join("".join(f"Z{j}" for j in g) for g in ring["generators"])
                or "none"
            )
            out.write(f"minimal generators: {gens}\n")
    return EXIT_EMPTY if empty else EXIT_OK


def _verdict_line(verdict: PairVerdict) -> str:
    if verdict.diffeomorphic:
        return "Diffeomorphic (same chamber up to permutation); Betti numbers identical"
    betti = "identical" if verdict.betti_equal else "differ"
    return (
        f"NOT diffeomorphic; Betti numbers {betti}; "
        f"witness subset {_fmt_subset(verdict.witness)}"
    )


def _cmd_compare(args: argparse.Namespace, out: TextIO) -> int:
    d = _require_d(args)
    first = parse_length_vector(args.l)
    second = parse_length_vector(args.l2)
    verdict = classify_pair(first, second, d, args.max_n)
    if args.json:
        _emit_json(
            {
                "n": first.n,
                "d": d,
                "diffeomorphic": verdict.diffeomorphic,
                "betti_equal": verdict.betti_equal,
                "witness": list(indices_of_mask(verdict.witness))
                if verdict.witness is not None
                else None,
                "notes": verdict.notes,
            },
            out,
        )
    else:
        out.write(_verdict_line(verdict) + "\n")
    return EXIT_OK


def _cmd_census(args: argparse.Namespace, out: TextIO) -> int:
    census = enumerate_chambers(args.n)
    if args.json:
        _emit_json(census.to_json_obj(), out)
    else:
        out.write(f"n={census.n}: {census.count} chambers\n")
        for i, (sig, rep) in enumerate(census.chambers, 1):
            fam = (
                " ".join(_fmt_subset(m) for m in sorted(sig.short_family, key=indices_of_mask))
                or "(empty space)"
            )
            out.write(f"[{i}] representative {rep}  short family: {fam}\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    d = _require_d(args)
    lv = parse_length_vector(args.l).ordered()[0]
    records = critical_data(lv, d, args.max_n)
    solved = find_polygon(lv, d, seed=args.seed)
    doc = {
        "n": lv.n,
        "d": d,
        "vector": [str(e) for e in lv.entries],
        "critical": [
            {
                "subset": list(indices_of_mask(r.subset)),
                "value": str(r.critical_value),
                "index": r.index,
                "signature": list(r.hessian_signature),
            }
            for r in records
        ],
        "lacunary_consistent": lacunary_consistency(lv, d, args.max_n),
    }
    empty = isinstance(solved, EmptySpaceCertificate)
    if empty:
        doc["realization"] = {
            "empty": True,
            "witness": list(indices_of_mask(solved.witness)),
            "min_residual": str(solved.min_residual),
        }
        doc["jacobian_rank"] = None
    else:
        doc["realization"] = {
            "empty": False,
            "residual": solved.residual,
            "sweeps": solved.sweeps,
            "restarts": solved.restarts,
        }
        doc["jacobian_rank"] = jacobian_rank(lv, solved)
    if args.json:
        _emit_json(doc, out)
    else:
        out.write(f"vector {lv}  n={lv.n} d={d}\n")
        out.write(f"critical records ({len(records)}):\n")
        for r in records:
            out.write(
                f"  J={_fmt_subset(r.subset)} value={r.critical_value} "
                f"index={r.index} signature={r.hessian_signature}\n"
            )
        if empty:
            out.write(
                f"empty space: witness {_fmt_subset(solved.witness)}, "
                f"exact min residual {solved.min_residual}\n"
            )
        else:
            out.write(
                f"realization: residual {solved.residual:.3e} after "
                f"{solved.sweeps} sweeps ({solved.restarts} restarts)\n"
            )
            out.write(f"jacobian rank: {doc['jacobian_rank']} (full rank is {lv.n})\n")
        out.write(
            "lacunary consistency: "
            + ("ok" if doc["lacunary_consistent"] else "FAILED")
            + "\n"
        )
    return EXIT_EMPTY if empty else EXIT_OK


def _cmd_classify_file(args: argparse.Namespace, out: TextIO) -> int:
    d = _require_d(args)
    vectors = _read_vector_file(args.file)
    if not vectors:
        raise _UsageError(f"no vectors found in {args.file}")
    k = len(vectors)
    diffeo = [[True] * k for _ in range(k)]
    betti_eq = [[True] * k for _ in range(k)]
    pairs = []
    for i in range(k):
        for j in range(i + 1, k):
            verdict = classify_pair(vectors[i], vectors[j], d, args.max_n)
            diffeo[i][j] = diffeo[j][i] = verdict.diffeomorphic
            betti_eq[i][j] = betti_eq[j][i] = verdict.betti_equal
            pairs.append((i, j, verdict))
    if args.json:
        _emit_json(
            {
                "d": d,
                "n": vectors[0].n,
                "vectors": [[str(e) for e in v.entries] for v in vectors],
                "diffeomorphic": diffeo,
                "betti_equal": betti_eq,
                "witnesses": [
                    {
                        "i": i,
                        "j": j,
                        "witness": list(indices_of_mask(v.witness))
                        if v.witness is not None
                        else None,
                    }
                    for i, j, v in pairs
                ],
            },
            out,
        )
    else:
        for i, v in enumerate(vectors):
            out.write(f"{i}: {v}\n")
        for i, j, verdict in pairs:
            out.write(f"{i} vs {j}: {_verdict_line(verdict)}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and dispatch


def _add_common(sub: argparse.ArgumentParser, need_d: bool) -> None:
    if need_d:
        sub.add_argument("--d", type=int, required=True, help="ambient dimension, >= 3")
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--seed", type=int, default=0, help="PRNG seed for realization")
    sub.add_argument(
        "--max-n",
        dest="max_n",
        type=int,
        default=None,
        help="override the subset-enumeration cap (default 24)",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="polygonspaces", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("betti", help="Z2 Betti table of one vector")
    p.add_argument("--l", required=True, help="comma/space separated side lengths")
    _add_common(p, need_d=True)
    p.set_defaults(handler=_cmd_betti)

    p = subs.add_parser("ring", help="cohomology ring presentation")
    p.add_argument("--l", required=True)
    _add_common(p, need_d=True)
    p.set_defaults(handler=_cmd_ring)

    p = subs.add_parser("compare", help="diffeomorphism verdict for a pair")
    p.add_argument("--l", required=True)
    p.add_argument("--l2", required=True)
    _add_common(p, need_d=True)
    p.set_defaults(handler=_cmd_compare)

    p = subs.add_parser("census", help="all chambers for small n")
    p.add_argument("--n", type=int, required=True)
    _add_common(p, need_d=False)
    p.set_defaults(handler=_cmd_census)

    p = subs.add_parser("verify", help="critical data, realization, rank test")
    p.add_argument("--l", required=True)
    _add_common(p, need_d=True)
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("classify-file", help="pairwise verdicts for a vector file")
    p.add_argument("--file", required=True, help="one vector per line, # comments")
    _add_common(p, need_d=True)
    p.set_defaults(handler=_cmd_classify_file)

    return parser


def run(
    argv: Sequence[str] | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_INPUT
    try:
        return args.handler(args, out)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except _LIMIT_ERRORS as exc:
        err.write(f"limit: {exc}\n")
        return EXIT_LIMIT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
