"""Command-line entry point: ``abelmaps {check,resolve,delta,strata,scan}``.

Exit codes: 0 success, 1 negative verdict, 2 bad input or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from . import __version__
from .blowup import BlowupSequence, default_max_len, search_minimal_symmetric, verify
from .errors import AbelDataError
from .io import format_rational, load_document, load_sequence
from .quasistability import AbelData, correction_table
from .resolution import SingularLocusReport, singular_locus
from .scan import dumps_record, scan
from .strata import enumerate_stratum_representatives, signature

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def _pair_name(rep: SingularLocusReport, pair) -> str:
    g = rep.graph
    return f"({g.edge_label(pair[0])}, {g.edge_label(pair[1])})"


def _degree_zero(data: AbelData) -> tuple[Fraction, ...]:
    # δ depends only on q - e, so shift e to the polarization matching q = 2 at v.
    return tuple(
        e - q + (2 if i == data.v else 0) for i, (e, q) in enumerate(zip(data.e, data.q))
    )


def _check_payload(name: str, data: AbelData, rep: SingularLocusReport) -> tuple[dict, list[str]]:
    g = data.graph
    e0 = _degree_zero(data)
    xi0 = signature(g, data.v, e0).in_xi0
    sizes = Counter(len(q) for q in rep.qtable.values())
    sigma = sorted(rep.off_diagonal)
    payload = {
        "name": name,
        "vertices": g.p,
        "edges": [g.edge_label(i) for i in range(g.n_edges)],
        "v": data.v + 1,
        "e": [format_rational(x) for x in data.e],
        "in_xi0": xi0,
        "solvable": rep.solvable,
        "sigma_off_diagonal": [[g.edge_label(a), g.edge_label(b)] for a, b in sigma],
        "qset_sizes": {str(k): sizes[k] for k in sorted(sizes)},
    }
    lines = [
        f"name: {name}",
        f"graph: {g.p} vertices, {g.n_edges} edges: {' '.join(payload['edges'])}",
        f"v = {data.v + 1}, e = ({', '.join(payload['e'])})",
        f"e in Xi_0: {xi0}" + ("" if e0 == data.e else " (after shifting to q = 2 at v)"),
        f"solvable: {rep.solvable}",
        f"Sigma minus diagonal ({len(sigma)} pairs):",
    ]
    lines += [f"  {_pair_name(rep, pr)}" for pr in sigma]
    lines.append(
        "Q-set sizes: " + ", ".join(f"{k} choices x {sizes[k]} pairs" for k in sorted(sizes))
    )
    return payload, lines


def cmd_check(args) -> int:
    name, data = load_document(args.file)
    rep = singular_locus(data)
    payload, lines = _check_payload(name, data, rep)
    _emit(args, payload, lines)
    return EXIT_OK if rep.solvable else EXIT_NEGATIVE


def cmd_resolve(args) -> int:
    name, data = load_document(args.file)
    rep = singular_locus(data)
    payload, lines = _check_payload(name, data, rep)
    if not rep.solvable:
        payload["status"] = "unsolvable"
        lines.append("status: unsolvable (no quasistable resolution exists)")
        _emit(args, payload, lines)
        return EXIT_NEGATIVE

    if args.verify_only:
        seq = load_sequence(args.verify_only)
        status_ok = "verified"
    else:
        max_len = args.max_len if args.max_len is not None else default_max_len(rep)
        seq = search_minimal_symmetric(rep, max_len)
        status_ok = "found"
        if seq is None:
            payload["status"] = "not_found"
            payload["max_len"] = max_len
            lines.append(f"status: not found within max length {max_len}")
            _emit(args, payload, lines)
            return EXIT_NEGATIVE

    verdict = verify(rep, seq)
    ok = verdict.minimal and verdict.symmetric
    payload.update(
        status=status_ok if ok else "rejected",
        sequence=seq.to_lists(),
        resolves=verdict.resolves,
        minimal=verdict.minimal,
        symmetric=verdict.symmetric,
        witness=verdict.witness,
    )
    lines += [
        f"sequence: {seq}",
        f"resolves: {str(verdict.resolves).lower()}",
        f"resolves minimally: {str(verdict.minimal).lower()}",
        f"symmetric: {str(verdict.symmetric).lower()}",
    ]
    if verdict.witness:
        lines.append(f"witness: {verdict.witness}")
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_delta(args) -> int:
    name, data = load_document(args.file)
    p = data.graph.p
    idx = {}
    for key in ("i", "k", "m", "n"):
        val = getattr(args, key)
        if not 1 <= val <= p:
            raise InputError(f"--{key} must be in 1..{p}, got {val}")
        idx[key] = val - 1
    table = correction_table(data)
    value = table.delta(idx["i"], idx["k"], idx["m"], idx["n"])
    w = list(table.w[idx["i"]][idx["k"]])
    payload = {"name": name, "i": args.i, "k": args.k, "m": args.m, "n": args.n, "delta": value, "w": w}
    lines = [
        f"delta({args.i},{args.k},{args.m},{args.n}) = {value}",
        f"w_({args.i},{args.k}) = ({', '.join(map(str, w))})  [normalized to 0 at v = {data.v + 1}]",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_strata(args) -> int:
    name, data = load_document(args.file)
    g, v = data.graph, data.v
    reps = enumerate_stratum_representatives(g, v, args.denominator, args.bound)
    rows = []
    lines = [f"grid: denominator {args.denominator}, bound {args.bound}; {len(reps)} signatures found"]
    for e, sig in reps:
        row = {"e": [format_rational(x) for x in e], "signature": sig.compact()}
        text = f"e = ({', '.join(row['e'])})  signature [{row['signature']}]"
        if args.resolve:
            rep = singular_locus(AbelData.standard(g, e, v))
            row["solvable"] = rep.solvable
            row["sigma_off_diagonal"] = len(rep.off_diagonal)
            seq = search_minimal_symmetric(rep) if rep.solvable else None
            row["sequence"] = seq.to_lists() if seq is not None else None
            text += f"  solvable {rep.solvable}  |Sigma-D| {len(rep.off_diagonal)}  sequence {seq if seq is not None else '-'}"
        rows.append(row)
        lines.append(text)
    _emit(args, {"name": name, "denominator": args.denominator, "bound": args.bound, "rows": rows}, lines)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.vertices < 2 or args.max_edges < args.vertices - 1:
        raise InputError("need --vertices >= 2 and --max-edges >= vertices - 1")
    lo = args.min_vertices if args.min_vertices is not None else args.vertices
    if not 2 <= lo <= args.vertices:
        raise InputError("--min-vertices must lie in 2..vertices")
    unsolvable = failed = total = 0
    try:
        out = open(args.out, "a") if args.out else None
    except OSError as exc:
        raise InputError(f"cannot open {args.out}: {exc}") from exc
    try:
        for record in scan(args.count, args.seed, args.vertices, args.max_edges,
                           args.denominator, args.bound, min_vertices=lo, jobs=args.jobs):
            total += 1
            if not record["solvable"]:
                unsolvable += 1
            elif not record["search_ok"]:
                failed += 1
            if out:
                out.write(dumps_record(record) + "\n")
    except OSError as exc:
        raise InputError(f"writing {args.out}: {exc}") from exc
    finally:
        if out:
            out.close()
    payload = {"instances": total, "unsolvable": unsolvable, "search_failures": failed, "seed": args.seed}
    lines = [f"instances: {total}", f"unsolvable: {unsolvable}", f"search failures: {failed}"]
    _emit(args, payload, lines)
    return EXIT_OK if unsolvable == failed == 0 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abelmaps", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="singular locus and solvability")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("resolve", parents=[common], help="search for or verify a minimal symmetric blowup sequence")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--verify-only", metavar="SEQFILE", default=None)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("delta", parents=[common], help="one value of the correction function")
    p.add_argument("file")
    for key in ("i", "k", "m", "n"):
        p.add_argument(f"--{key}", type=int, required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("strata", parents=[common], help="sweep degree-0 polarizations by signature")
    p.add_argument("file")
    p.add_argument("--denominator", type=int, default=2)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--resolve", action="store_true")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("scan", parents=[common], help="run the pipeline on seeded random instances")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--min-vertices", type=int, default=None)
    p.add_argument("--max-edges", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator", type=int, default=2)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AbelDataError, InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
