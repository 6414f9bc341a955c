"""Command-line front door for depth computations.

Subcommands
-----------
functional    depth of curves (univariate CSV or multivariate directory)
pointcloud    depth of points in a static cloud
stats         order/select items from a saved depth result
homogeneity   P1/P2 coefficient between two samples
matrix        pairwise homogeneity matrix over several groups
plot          SVG figures: deepest/outlying curves, depth-shaded scatter

Exit codes: 0 success, 1 data or compute error, 2 usage error. Errors go
to stderr as single-line JSON. Identical argv and input files produce
byte-identical stdout and output files; progress goes to stderr and is
silenced by --quiet.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .depths import default_containment, functional_depth
from .fileio import (
    SCHEMA_VERSION,
    parse_multivariate_dir,
    parse_pointcloud_csv,
    parse_univariate_csv,
    read_result,
    serialize_result,
    write_result,
)
from .homogeneity import HOMOGENEITY_METHODS, homogeneity, homogeneity_matrix
from .lstats import central_region, deepest, ordered, outlying
from .model import DepthParams, validate_functional, validate_pointcloud
from .pointcloud import pointcloud_depth
from .render import render_curves, render_heatmap, render_scatter

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Bad flag combination detected after argparse (exit 2)."""


def _error_line(kind: str, message: str) -> str:
    return json.dumps({"error": {"type": kind, "message": message}}) + "\n"


class _Parser(argparse.ArgumentParser):
    # route argparse's own complaints through the JSON error channel
    def error(self, message):
        sys.stderr.write(_error_line("usage", message))
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    common.add_argument("--quiet", action="store_true", help="suppress progress output on stderr")
    common.add_argument("--deep-check", dest="deep_check", action="store_true",
                        help="scan inputs for NaN/Inf and grid defects before computing")

    outopts = argparse.ArgumentParser(add_help=False)
    outopts.add_argument("--out", default=None, help="write the result to this file instead of stdout")
    outopts.add_argument("--format", choices=("json", "csv"), default="json")

    parser = _Parser(prog="depthkit", description="Statistical depth for curves and point clouds.")
    parser.add_argument("--version", action="version",
                        version=f"depthkit {__version__} (schema {SCHEMA_VERSION})")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("functional", parents=[common, outopts],
                       help="band / simplicial band depth of functional data")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="univariate CSV (columns = curves)")
    src.add_argument("--multivariate", metavar="DIR",
                     help="directory with one CSV per curve, same columns and grid")
    p.add_argument("--J", type=int, default=2, help="largest band order (default 2)")
    p.add_argument("--K", type=int, default=None, help="number of resampling blocks (default: exact)")
    p.add_argument("--containment", choices=("r2", "simplex"), default=None,
                   help="containment rule (default: r2 univariate, simplex multivariate)")
    p.add_argument("--relax", action="store_true", help="modified depth: fraction of grid inside")
    p.add_argument("--seed", type=int, default=None, help="resampling seed (echoed in output)")
    p.set_defaults(func=_cmd_functional)

    p = sub.add_parser("pointcloud", parents=[common, outopts], help="depth of points in a cloud")
    p.add_argument("--input", required=True, help="point cloud CSV (rows = points)")
    p.add_argument("--containment", choices=("simplex", "oja", "mahalanobis", "l1"),
                   default="simplex")
    p.set_defaults(func=_cmd_pointcloud)

    p = sub.add_parser("stats", parents=[common, outopts],
                       help="order/select items from a saved depth result")
    p.add_argument("--depths", required=True, help="depth result JSON produced by functional/pointcloud")
    p.add_argument("action", choices=("ordered", "deepest", "outlying", "central"))
    p.add_argument("value", nargs="?", default=None,
                   help="count for deepest/outlying (default 1), fraction for central (default 0.5)")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("homogeneity", parents=[common, outopts],
                       help="P1/P2 homogeneity coefficient between two samples")
    p.add_argument("--f", required=True, help="reference sample CSV")
    p.add_argument("--g", required=True, help="comparison sample CSV")
    p.add_argument("--method", required=True, choices=HOMOGENEITY_METHODS)
    p.add_argument("--J", type=int, default=2)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--relax", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_homogeneity)

    p = sub.add_parser("matrix", parents=[common, outopts],
                       help="pairwise homogeneity matrix over several groups")
    p.add_argument("--groups", nargs="+", required=True, metavar="CSV",
                   help="two or more univariate sample files; labels are the file stems")
    p.add_argument("--method", default="p2", choices=HOMOGENEITY_METHODS)
    p.add_argument("--heatmap", default=None, metavar="SVG", help="also render the matrix as a heatmap")
    p.add_argument("--J", type=int, default=2)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--relax", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("plot", parents=[common], help="render an SVG figure")
    p.add_argument("what", choices=("deepest", "outlying", "depths"))
    p.add_argument("n", nargs="?", default=None, help="curve count for deepest/outlying (default 1)")
    p.add_argument("--input", required=True, help="curves CSV (deepest/outlying) or cloud CSV (depths)")
    p.add_argument("--depths", default=None, help="depth result JSON (required for deepest/outlying)")
    p.add_argument("--containment", choices=("simplex", "oja", "mahalanobis", "l1"), default="simplex",
                   help="containment rule for 'plot depths' (default simplex)")
    p.add_argument("--out", required=True, metavar="SVG")
    p.set_defaults(func=_cmd_plot)

    return parser


def _positive_count(raw, label: str, default: int) -> int:
    if raw is None:
        return default
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{label} expects an integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"{label} must be at least 1")
    return n


def _check_input(thing, deep: bool, validator) -> None:
    report = validator(thing, deep=deep)
    if not report.ok:
        detail = "; ".join(f"{v.subject}: {v.detail}" for v in report.violations)
        raise ValueError(f"input failed validation: {detail}")


def _emit(args, result) -> None:
    if args.out:
        write_result(result, args.format, args.out)
    else:
        sys.stdout.write(serialize_result(result, args.format))


def _functional_params(args, containment: str) -> DepthParams:
    if args.J < 2:
        raise UsageError("--J must be at least 2")
    if args.K is not None and args.K < 1:
        raise UsageError("--K must be at least 1")
    return DepthParams(J=args.J, K=args.K, containment=containment,
                       relax=args.relax, seed=args.seed, quiet=args.quiet)


def _cmd_functional(args) -> int:
    if args.multivariate is not None:
        sample = parse_multivariate_dir(args.multivariate)
    else:
        sample = parse_univariate_csv(args.input)
    _check_input(sample, args.deep_check, validate_functional)
    containment = args.containment or default_containment(sample)
    params = _functional_params(args, containment)
    result = functional_depth(sample, params, threads=args.threads)
    _emit(args, result)
    return 0


def _cmd_pointcloud(args) -> int:
    cloud = parse_pointcloud_csv(args.input)
    _check_input(cloud, args.deep_check, validate_pointcloud)
    params = DepthParams(containment=args.containment, quiet=args.quiet)
    result = pointcloud_depth(cloud, params, threads=args.threads)
    _emit(args, result)
    return 0


def _stats_doc(action: str, detail: dict, entries: list[tuple[str, float]]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "stats",
        "action": action,
        **detail,
        "entries": [
            {"id": item_id, "depth": depth, "display": f"{depth:.6f}"}
            for item_id, depth in entries
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _cmd_stats(args) -> int:
    result = read_result(args.depths)
    action = args.action
    if action == "ordered":
        if args.value is not None:
            raise UsageError("ordered takes no count argument")
        detail, entries = {}, ordered(result)
    elif action in ("deepest", "outlying"):
        n = _positive_count(args.value, action, 1)
        detail = {"n": n}
        entries = deepest(result, n) if action == "deepest" else outlying(result, n)
    else:
        if args.value is None:
            fraction = 0.5
        else:
            try:
                fraction = float(args.value)
            except ValueError:
                raise UsageError(f"central expects a fraction, got {args.value!r}")
        ids = central_region(result, fraction)
        detail = {"fraction": fraction}
        entries = [(item_id, result.depth_of(item_id)) for item_id in ids]
    text = _stats_doc(action, detail, entries)
    if args.format == "csv":
        lines = ["id,depth"] + [f"{item_id},{depth!r}" for item_id, depth in entries]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _homogeneity_params(args) -> DepthParams:
    if args.J < 2:
        raise UsageError("--J must be at least 2")
    if args.K is not None and args.K < 1:
        raise UsageError("--K must be at least 1")
    return DepthParams(J=args.J, K=args.K, containment="r2",
                       relax=args.relax, seed=args.seed, quiet=args.quiet)


def _cmd_homogeneity(args) -> int:
    F = parse_univariate_csv(args.f)
    G = parse_univariate_csv(args.g)
    _check_input(F, args.deep_check, validate_functional)
    _check_input(G, args.deep_check, validate_functional)
    report = homogeneity(F, G, args.method, _homogeneity_params(args), threads=args.threads)
    if args.out:
        write_result(report, args.format, args.out)
    else:
        sys.stdout.write(f"{report.value:.6f}\n")
    return 0


def _cmd_matrix(args) -> int:
    if len(args.groups) < 2:
        raise UsageError("--groups needs at least two files")
    groups = [parse_univariate_csv(path) for path in args.groups]
    for g in groups:
        _check_input(g, args.deep_check, validate_functional)
    labels = [Path(path).stem for path in args.groups]
    params = _homogeneity_params(args)
    M = homogeneity_matrix(groups, args.method, params, threads=args.threads)
    _emit(args, (labels, M, args.method, params))
    if args.heatmap:
        render_heatmap(M, labels, args.heatmap, title=f"{args.method} homogeneity")
    return 0


def _cmd_plot(args) -> int:
    if args.what == "depths":
        if args.n is not None:
            raise UsageError("plot depths takes no count argument")
        cloud = parse_pointcloud_csv(args.input)
        _check_input(cloud, args.deep_check, validate_pointcloud)
        params = DepthParams(containment=args.containment, quiet=args.quiet)
        result = pointcloud_depth(cloud, params, threads=args.threads)
        render_scatter(cloud, result, mode="gradient", path=args.out, title="depths")
        return 0
    if args.depths is None:
        raise UsageError(f"plot {args.what} requires --depths")
    n = _positive_count(args.n, args.what, 1)
    sample = parse_univariate_csv(args.input)
    _check_input(sample, args.deep_check, validate_functional)
    result = read_result(args.depths)
    picks = deepest(result, n) if args.what == "deepest" else outlying(result, n)
    ids = [item_id for item_id, _ in picks]
    render_curves(sample, ids, title=f"{n} {args.what}", path=args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 2)
    if getattr(args, "func", None) is None:
        sys.stderr.write(_error_line("usage", "a subcommand is required (see --help)"))
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(_error_line("usage", str(exc)))
        return 2
    except Exception as exc:  # data/compute boundary: report and signal failure
        sys.stderr.write(_error_line("data", str(exc)))
        return 1


if __name__ == "__main__":
    sys.exit(main())
