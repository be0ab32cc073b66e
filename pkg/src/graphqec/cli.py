"""Command-line front end.

Exit codes: 0 when the checked claim holds (or a search succeeds), 1 when it
fails (the JSON payload then carries a machine-checkable witness), 2 on
usage or input errors.  JSON goes to stdout, diagnostics to stderr.  The
only environment knob is GRAPHQEC_WORKERS, an optional worker count for
sweeps; identical inputs always produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from pathlib import Path

from . import detector, oracle, singleton
from .abelian import parse_group
from .graphcode import BUILTIN_GRAPHS, WeightedGraph, parse_graph

EXIT_OK = 0
EXIT_CLAIM_FAILS = 1
EXIT_USAGE = 2


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _info(message: str) -> None:
    print(message, file=sys.stderr)


def _workers() -> int:
    raw = os.environ.get("GRAPHQEC_WORKERS", "")
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"GRAPHQEC_WORKERS must be an integer, got {raw!r}")
    return max(value, 1)


def _parse_vertex_list(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad vertex list {text!r}") from None


def _load_graph(args) -> WeightedGraph:
    if getattr(args, "builtin", None):
        builder = BUILTIN_GRAPHS[args.builtin]
        graph = builder()
    else:
        path = Path(args.graph)
        graph = parse_graph(path.read_text(encoding="utf-8"), name=path.stem)
    if getattr(args, "inputs", None) is not None:
        graph = graph.with_inputs(_parse_vertex_list(args.inputs))
    return graph


def _add_graph_flags(sub, with_inputs=True):
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="graph file to load")
    src.add_argument(
        "--builtin",
        choices=sorted(BUILTIN_GRAPHS),
        help="use a built-in graph",
    )
    if with_inputs:
        sub.add_argument(
            "--inputs",
            metavar="LIST",
            help="override the input vertex set, e.g. '3' or '0,1'",
        )


def _cmd_detect(args) -> int:
    graph = _load_graph(args)
    group = parse_group(args.group)
    config = _parse_vertex_list(args.config)
    verdict = detector.detects(graph, group, config)
    _emit(verdict.to_dict())
    return EXIT_OK if verdict.detected else EXIT_CLAIM_FAILS


def _cmd_sweep(args) -> int:
    graph = _load_graph(args)
    group = parse_group(args.group)
    workers = _workers()
    if args.detect is not None:
        report = detector.detects_errors(graph, group, args.detect, workers=workers)
    else:
        report = detector.corrects_errors(graph, group, args.correct, workers=workers)
    _info(f"sweep finished in {report.elapsed_s:.3f}s")
    payload = report.to_dict(include_elapsed=False)

    exit_code = EXIT_OK if report.all_detected else EXIT_CLAIM_FAILS
    if args.oracle:
        total = group.order ** graph.n
        if total > oracle.DEFAULT_SIZE_CAP:
            _info(
                f"warning: oracle skipped, instance size {total} exceeds cap "
                f"{oracle.DEFAULT_SIZE_CAP}"
            )
            payload["oracle"] = {"checked": 0, "skipped": "size cap exceeded"}
        else:
            iso = oracle.build_isometry(graph, group)
            undetected = set(report.undetected)
            disagreements = []
            checked = 0
            for summary in report.sizes:
                for cfg in itertools.combinations(graph.outputs, summary.size):
                    checked += 1
                    kl = oracle.kl_detects(graph, group, cfg, isometry=iso)
                    if kl != (cfg not in undetected):
                        disagreements.append(
                            {"config": list(cfg), "kernel_verdict": cfg not in undetected,
                             "oracle_verdict": kl}
                        )
            payload["oracle"] = {
                "checked": checked,
                "disagreements": disagreements,
            }
            if disagreements:
                exit_code = EXIT_CLAIM_FAILS
    _emit(payload)
    return exit_code


def _cmd_subdets(args) -> int:
    # the partition plays no role here; --inputs names the restriction set
    if args.builtin:
        graph = BUILTIN_GRAPHS[args.builtin]()
    else:
        path = Path(args.graph)
        graph = parse_graph(path.read_text(encoding="utf-8"), name=path.stem)
    if args.inputs is not None:
        fixed = _parse_vertex_list(args.inputs)
        report = singleton.restricted_subdets(graph.gamma, fixed)
        payload = report.to_dict()
        payload["restricted_to_inputs"] = list(fixed)
    else:
        report = singleton.offdiag_subdets(graph.gamma)
        payload = report.to_dict()
    payload["graph"] = graph.name or f"{graph.n}-vertex graph"
    _emit(payload)
    return EXIT_OK


def _cmd_search(args) -> int:
    if args.skeleton:
        path = Path(args.skeleton)
        pattern = parse_graph(path.read_text(encoding="utf-8"), name=path.stem)
        skeleton = singleton.Skeleton.from_matrix(pattern.gamma)
    else:
        skeleton = singleton.Skeleton.from_matrix(BUILTIN_GRAPHS[args.builtin]().gamma)
    result = singleton.search_weights(skeleton, args.bound, args.seed, args.budget)
    payload = {
        "found": result.success,
        "attempts": result.attempts,
        "seed": result.seed,
        "budget": result.budget,
        "bound": args.bound,
    }
    if result.success:
        report = singleton.offdiag_subdets(result.matrix)
        payload["matrix"] = [list(row) for row in result.matrix]
        payload["det_set"] = list(report.det_set)
        payload["bad_primes"] = report.to_dict()["bad_primes"]
    _emit(payload)
    return EXIT_OK if result.success else EXIT_CLAIM_FAILS


def _cmd_census(args) -> int:
    classes = singleton.graph_census(args.n)
    payload = {
        "n": args.n,
        "count": len(classes),
        "classes": [
            {
                "bits": singleton.adjacency_bits(gamma),
                "edges": [
                    [u, v]
                    for u in range(args.n)
                    for v in range(u + 1, args.n)
                    if gamma[u][v]
                ],
            }
            for gamma in classes
        ],
    }
    _emit(payload)
    return EXIT_OK


def _cmd_export(args) -> int:
    graph = _load_graph(args)
    group = parse_group(args.group)
    iso = oracle.build_isometry(graph, group)
    header = oracle.export_isometry_csv(iso, args.out)
    _info(f"wrote {iso.rows * iso.cols} entries to {args.out}")
    _emit(header)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphqec",
        description=(
            "Build quantum error-detecting codes from weighted graphs and "
            "finite abelian groups, and verify their detection claims."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="verdict for one error configuration")
    _add_graph_flags(p)
    p.add_argument("--group", default="2",
                   help="comma-separated cyclic factors (default: 2)")
    p.add_argument("--config", required=True, metavar="LIST",
                   help="error configuration, e.g. '1,2' (empty string for the isometry check)")
    p.set_defaults(handler=_cmd_detect)

    p = sub.add_parser("sweep", help="sweep all configurations up to a size")
    _add_graph_flags(p)
    p.add_argument("--group", default="2",
                   help="comma-separated cyclic factors (default: 2)")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--detect", type=int, metavar="T",
                      help="check detection of all configurations of size <= T")
    mode.add_argument("--correct", type=int, metavar="E",
                      help="check correction of E errors (detection up to size 2E)")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check every verdict against the brute-force oracle")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("subdets", help="off-diagonal block determinant report")
    _add_graph_flags(p, with_inputs=False)
    p.add_argument("--inputs", metavar="LIST", default=None,
                   help="restrict to partitions keeping these input vertices together")
    p.set_defaults(handler=_cmd_subdets)

    p = sub.add_parser("search", help="randomized weight search on a skeleton")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--skeleton", metavar="FILE",
                     help="graph file whose support pattern is the skeleton")
    src.add_argument("--builtin", choices=sorted(BUILTIN_GRAPHS),
                     help="use a built-in graph's support pattern")
    p.add_argument("--bound", type=int, default=2, metavar="W",
                   help="weights drawn from [-W, W] without 0 (default: 2)")
    p.add_argument("--seed", type=int, default=0, help="master RNG seed (default: 0)")
    p.add_argument("--budget", type=int, default=10**5,
                   help="maximum number of attempts (default: 100000)")
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("census", help="isomorphism classes passing the all-unimodular test")
    p.add_argument("--n", type=int, required=True, help="vertex count (even, <= 8)")
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("export", help="dump the code matrix as CSV plus a JSON header")
    _add_graph_flags(p)
    p.add_argument("--group", default="2",
                   help="comma-separated cyclic factors (default: 2)")
    p.add_argument("--out", required=True, metavar="FILE", help="CSV output path")
    p.set_defaults(handler=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
