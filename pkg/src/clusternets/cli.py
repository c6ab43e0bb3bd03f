"""Command-line front end.

Subcommands: cluster, network, complex, dimension, padic-verify,
phylo-sweep. Output is deterministic (canonical ordering everywhere, no
timestamps in the payload); run metadata can be emitted to a side file with
--emit-meta. Exit codes: 0 success, 2 input validation failure, 3 internal
invariant violation. Errors go to stderr as one-line JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .dendrogram import build_dendrogram
from .errors import StructuralError
from .metric import DistanceMatrix, as_fraction
from .network import ClusterNetwork, merge_dendrograms, to_dot, to_json
from .padic import (
    Lattice,
    NormSpec,
    ball_network,
    default_weights,
    identity_matrix,
    intermediary_balls,
    require_prime,
    verify_correspondence,
)
from .phylo import load_marker_bundle, load_sweep_spec, sweep
from .simplicial import (
    build_complex,
    check_compatibility,
    complex_json,
    complex_json_dict,
    network_dimension,
    skeleton_dot,
)


class InputError(Exception):
    """User-facing input problem; maps to exit code 2."""


def _read_matrix(path: str) -> DistanceMatrix:
    if path == "-":
        text = sys.stdin.read()
        name = "stdin"
    else:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from None
        name = p.stem
    try:
        return DistanceMatrix.from_csv(text)
    except StructuralError as exc:
        raise InputError(f"{name}: {exc}") from None


def _metric_id(path: str, used: set[str]) -> str:
    base = "stdin" if path == "-" else Path(path).stem
    name = base
    k = 1
    while name in used:
        name = f"{base}.{k}"
        k += 1
    used.add(name)
    return name


def _network_from_paths(paths: list[str]) -> ClusterNetwork:
    used: set[str] = set()
    ids = [_metric_id(p, used) for p in paths]
    matrices = [_read_matrix(p) for p in paths]
    try:
        dendros = [build_dendrogram(m) for m in matrices]
        return merge_dendrograms(dendros, ids)
    except StructuralError as exc:
        raise InputError(str(exc)) from None


def _write_output(payload: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(payload)
    else:
        Path(out).write_text(payload)


def _emit_meta(args: argparse.Namespace) -> None:
    if getattr(args, "emit_meta", None):
        meta = {
            "tool": "clusternets",
            "argv": sys.argv[1:],
            "unix_time": time.time(),
        }
        Path(args.emit_meta).write_text(json.dumps(meta, indent=2) + "\n")


def _parse_subfamily(arg: str | None, available: tuple[str, ...]) -> frozenset[str]:
    if arg is None:
        return frozenset(available)
    ids = frozenset(x for x in arg.split(",") if x)
    unknown = ids - set(available)
    if unknown:
        raise InputError(
            f"unknown metric ids {sorted(unknown)}; available: {sorted(available)}"
        )
    if not ids:
        raise InputError("empty subfamily")
    return ids


def _parse_weights(arg: str, p: int, d: int) -> tuple:
    try:
        q = tuple(as_fraction(x) for x in arg.split(","))
    except StructuralError as exc:
        raise InputError(str(exc)) from None
    if len(q) != d:
        raise InputError(f"got {len(q)} weights for dimension {d}")
    for x in q:
        if not (0 < x <= 1) or x * p <= 1:
            raise InputError(f"weight {x} outside (1/{p}, 1]")
    return q


def cmd_cluster(args) -> int:
    net = _network_from_paths([args.matrix])
    _write_output(to_dot(net) if args.format == "dot" else to_json(net), args.out)
    _emit_meta(args)
    return 0


def cmd_network(args) -> int:
    net = _network_from_paths(args.matrices)
    _write_output(to_dot(net) if args.format == "dot" else to_json(net), args.out)
    _emit_meta(args)
    return 0


def cmd_complex(args) -> int:
    net = _network_from_paths(args.matrices)
    subfamily = _parse_subfamily(args.r, net.metric_ids)
    compat = check_compatibility(net)
    cx = build_complex(net, subfamily)
    if args.format == "dot":
        payload = skeleton_dot(cx)
    else:
        payload = complex_json(cx, network_dimension(net, subfamily), compat)
    _write_output(payload, args.out)
    _emit_meta(args)
    return 0


def cmd_dimension(args) -> int:
    net = _network_from_paths(args.matrices)
    subfamily = _parse_subfamily(args.r, net.metric_ids)
    cx = build_complex(net, subfamily)
    doc = complex_json_dict(cx, network_dimension(net, subfamily), check_compatibility(net))
    doc.pop("simplices")
    _write_output(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    _emit_meta(args)
    return 0


def cmd_padic_verify(args) -> int:
    try:
        require_prime(args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.d < 1:
        raise InputError(f"dimension must be positive, got {args.d}")
    if args.q is None:
        q = default_weights(args.p, args.d)
    else:
        q = _parse_weights(args.q, args.p, args.d)
    if len(set(q)) == len(q):
        ordered = tuple(sorted(q))
        if ordered != tuple(q):
            raise InputError(
                "weights must be strictly increasing; try "
                + ",".join(str(x) for x in ordered)
            )
        report = verify_correspondence(args.p, args.d, q)
    else:
        # repeated weights: report the shortened ball chain of the diagonal
        # norm instead of the bijection check
        norm = NormSpec(args.p, tuple(q), identity_matrix(args.d))
        chain = intermediary_balls(norm, Lattice.standard(args.p, args.d))
        report = {
            "parameters": {"p": args.p, "d": args.d, "q": [str(x) for x in q]},
            "degenerate_parameters": True,
            "ball_count": len(chain.lattices),
            "full_chain_length": args.d + 1,
            "balls": [lat.describe() for lat in chain.lattices],
            "note": "repeated weights: the maximal ball chain is shorter "
            "than d+1 and defines no top-dimensional simplex",
        }
    report["parameters"]["precision"] = args.precision
    report.setdefault("degenerate_parameters", False)
    if args.window:
        net = ball_network(args.p, args.d, sorted(q), window=args.window)
        dim = network_dimension(net, frozenset(net.metric_ids))
        report["sampled_network"] = {
            "window": args.window,
            "points": len(net.labels),
            "metrics": len(net.metric_ids),
            "dimension": dim.overall,
        }
    _write_output(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    _emit_meta(args)
    return 0


def cmd_phylo_sweep(args) -> int:
    try:
        markers = load_marker_bundle(args.manifest)
        grid = load_sweep_spec(args.sweep_spec, len(markers))
        net = sweep(markers, grid)
    except StructuralError as exc:
        raise InputError(str(exc)) from None
    _write_output(to_dot(net) if args.format == "dot" else to_json(net), args.out)
    _emit_meta(args)
    return 0


def _add_common(sub: argparse.ArgumentParser, formats: bool = True) -> None:
    if formats:
        sub.add_argument("--format", choices=("json", "dot"), default="json")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--emit-meta", default=None, help="write run metadata JSON here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusternets",
        description="Chain-distance dendrograms, cluster networks, and "
        "p-adic ball-chain verification (exact rational arithmetic).",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("cluster", help="dendrogram of one distance matrix")
    s.add_argument("matrix", help="CSV path or - for stdin")
    _add_common(s)
    s.set_defaults(func=cmd_cluster)

    s = subs.add_parser("network", help="fuse dendrograms of several matrices")
    s.add_argument("matrices", nargs="+", help="CSV paths")
    _add_common(s)
    s.set_defaults(func=cmd_network)

    s = subs.add_parser("complex", help="simplicial complex of a metric family")
    s.add_argument("matrices", nargs="+", help="CSV paths")
    s.add_argument("--r", default=None, help="comma-separated metric ids (default all)")
    _add_common(s)
    s.set_defaults(func=cmd_complex)

    s = subs.add_parser("dimension", help="dimension report of a metric family")
    s.add_argument("matrices", nargs="+", help="CSV paths")
    s.add_argument("--r", default=None, help="comma-separated metric ids (default all)")
    _add_common(s, formats=False)
    s.set_defaults(func=cmd_dimension)

    s = subs.add_parser(
        "padic-verify", help="chain/norm correspondence check at small (p, d)"
    )
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--q", default=None, help="comma-separated weights, e.g. 3/5,4/5")
    s.add_argument("--precision", type=int, default=8, help="echoed in the report")
    s.add_argument(
        "--window",
        type=int,
        default=0,
        help="also sample (Z/p^window)^d and report the reordering-family "
        "network dimension (0 = skip)",
    )
    _add_common(s, formats=False)
    s.set_defaults(func=cmd_padic_verify)

    s = subs.add_parser("phylo-sweep", help="weight sweep over a marker bundle")
    s.add_argument("manifest", help="marker bundle manifest JSON")
    s.add_argument("sweep_spec", help="sweep specification JSON")
    _add_common(s)
    s.set_defaults(func=cmd_phylo_sweep)

    return parser


def _error_json(code: int, kind: str, message: str) -> None:
    sys.stderr.write(
        json.dumps({"error": {"code": code, "kind": kind, "message": message}}) + "\n"
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _error_json(2, "input", str(exc))
        return 2
    except (StructuralError, ValueError, LookupError) as exc:
        _error_json(2, "input", str(exc))
        return 2
    except Exception as exc:  # pragma: no cover - invariant violations
        _error_json(3, "internal", f"{type(exc).__name__}: {exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
