"""CSV ingestion and JSON/CSV result serialization.

CSV conventions:
  univariate    one column per curve, header row of curve names; a first
                column headed "", "index", or "x" is treated as the grid
                (numeric values become grid coordinates, anything else
                falls back to row numbers).
  multivariate  one file per curve; every column is a value dimension and
                every row a grid point; files must agree on headers, row
                count, and index values; the curve id is the file stem.
  pointcloud    one row per point; a first column headed "", "index",
                "id", or "label" carries point labels, otherwise rows are
                labelled by 0-based position.

JSON output carries a schema_version, the method name, the parameter
echo (seed included), and per-entry full-precision values next to fixed
6-decimal display strings. Writing then parsing a result reproduces the
entries exactly. All output uses "\n" newlines and no timestamps, so
identical inputs serialize byte-identically.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .homogeneity import HomogeneityReport
from .lstats import ordered
from .model import (
    Curve,
    DepthParams,
    DepthResult,
    FunctionalSample,
    MultivariateCurve,
    PointCloud,
    TimeGrid,
)

__all__ = [
    "SCHEMA_VERSION",
    "parse_univariate_csv",
    "parse_multivariate_dir",
    "parse_pointcloud_csv",
    "write_result",
    "read_result",
    "depth_result_json",
    "depth_result_csv",
    "homogeneity_json",
    "matrix_json",
    "matrix_csv",
]

SCHEMA_VERSION = "1"

_INDEX_HEADERS = ("", "index", "x")
_LABEL_HEADERS = ("", "index", "id", "label")


def _read_rows(path) -> list[list[str]]:
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    if not rows:
        raise ValueError(f"{path}: empty file")
    return rows


def _cell_float(cell: str, row: int, col: str, path) -> float:
    try:
        return float(cell)
    except ValueError:
        raise ValueError(f"non-numeric value {cell!r} at row {row}, column {col!r} in {path}") from None


def _check_width(row: list[str], width: int, rownum: int, path) -> None:
    if len(row) != width:
        raise ValueError(f"row {rownum} in {path} has {len(row)} cells, expected {width}")


def _grid_from_index(index_cells: list[str] | None, count: int) -> TimeGrid:
    if index_cells is not None:
        try:
            return TimeGrid([float(c) for c in index_cells])
        except ValueError:
            pass  # labels like "x_0" or "00:30": keep them out of the grid
    return TimeGrid(np.arange(count, dtype=float))


def parse_univariate_csv(path) -> FunctionalSample:
    """Read a columns-are-curves CSV into a univariate sample."""
    rows = _read_rows(path)
    header = [h.strip() for h in rows[0]]
    has_index = header[0].lower() in _INDEX_HEADERS
    start = 1 if has_index else 0
    names = header[start:]
    if not names:
        raise ValueError(f"{path}: no curve columns")
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise ValueError(f"{path}: duplicate column headers: {', '.join(sorted(dupes))}")

    index_cells: list[str] = []
    columns: list[list[float]] = [[] for _ in names]
    for r, row in enumerate(rows[1:], start=1):
        _check_width(row, len(header), r, path)
        if has_index:
            index_cells.append(row[0].strip())
        for c, cell in enumerate(row[start:]):
            columns[c].append(_cell_float(cell.strip(), r, names[c], path))
    if not columns[0]:
        raise ValueError(f"{path}: no data rows")

    grid = _grid_from_index(index_cells if has_index else None, len(columns[0]))
    curves = [Curve(name, vals) for name, vals in zip(names, columns)]
    return FunctionalSample(grid, curves)


def _parse_one_multivariate(path) -> tuple[tuple[str, ...], list[str], list[list[float]]]:
    rows = _read_rows(path)
    header = [h.strip() for h in rows[0]]
    has_index = header[0].lower() in _INDEX_HEADERS
    start = 1 if has_index else 0
    names = tuple(header[start:])
    if not names:
        raise ValueError(f"{path}: no value columns")
    index_cells: list[str] = []
    data: list[list[float]] = []
    for r, row in enumerate(rows[1:], start=1):
        _check_width(row, len(header), r, path)
        if has_index:
            index_cells.append(row[0].strip())
        data.append([_cell_float(cell.strip(), r, names[c], path) for c, cell in enumerate(row[start:])])
    if not data:
        raise ValueError(f"{path}: no data rows")
    return names, index_cells, data


def parse_multivariate_dir(paths) -> FunctionalSample:
    """Read one-file-per-curve CSVs into a multivariate sample.

    ``paths`` is a directory (its *.csv files, sorted by name) or an
    explicit list of files.
    """
    if isinstance(paths, (str, Path)) and Path(paths).is_dir():
        files = sorted(Path(paths).glob("*.csv"))
    else:
        files = [Path(p) for p in paths]
    if not files:
        raise ValueError(f"no CSV files found in {paths}")

    first = files[0]
    names, index_cells, data = _parse_one_multivariate(first)
    curves = [MultivariateCurve(first.stem, data)]
    for f in files[1:]:
        f_names, f_index, f_data = _parse_one_multivariate(f)
        if f_names != names:
            raise ValueError(f"column headers differ between {first} and {f}")
        if len(f_data) != len(data):
            raise ValueError(f"row counts differ between {first} ({len(data)}) and {f} ({len(f_data)})")
        if f_index != index_cells:
            raise ValueError(f"index values differ between {first} and {f}")
        curves.append(MultivariateCurve(f.stem, f_data))

    grid = _grid_from_index(index_cells or None, len(data))
    return FunctionalSample(grid, curves)


def parse_pointcloud_csv(path) -> PointCloud:
    """Read a rows-are-points CSV into a point cloud."""
    rows = _read_rows(path)
    header = [h.strip() for h in rows[0]]
    has_labels = len(header) > 1 and header[0].lower() in _LABEL_HEADERS
    start = 1 if has_labels else 0
    names = header[start:]
    if not names:
        raise ValueError(f"{path}: no coordinate columns")

    ids: list[str] = []
    points: list[list[float]] = []
    for r, row in enumerate(rows[1:], start=1):
        _check_width(row, len(header), r, path)
        ids.append(row[0].strip() if has_labels else str(r - 1))
        points.append([_cell_float(cell.strip(), r, names[c], path) for c, cell in enumerate(row[start:])])
    if not points:
        raise ValueError(f"{path}: no data rows")
    return PointCloud(ids, points)


def _params_dict(params: DepthParams) -> dict:
    return {
        "J": params.J,
        "K": params.K,
        "containment": params.containment,
        "relax": params.relax,
        "seed": params.seed,
        "tol": params.tol,
        "quiet": params.quiet,
    }


def _params_from_dict(d: dict) -> DepthParams:
    known = {k: d[k] for k in ("J", "K", "containment", "relax", "seed", "tol", "quiet") if k in d}
    return DepthParams(**known)


def depth_result_json(result: DepthResult) -> str:
    entries = [
        {"id": item_id, "depth": depth, "display": f"{depth:.6f}"}
        for item_id, depth in ordered(result)
    ]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "depth_result",
        "method": result.method,
        "params": _params_dict(result.params),
        "entries": entries,
        "warnings": list(result.warnings),
    }
    return json.dumps(doc, indent=2) + "\n"


def depth_result_csv(result: DepthResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "depth"])
    for item_id, depth in ordered(result):
        writer.writerow([item_id, repr(depth)])
    return buf.getvalue()


def homogeneity_json(report: HomogeneityReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "homogeneity",
        "method": report.method,
        "value": report.value,
        "display": f"{report.value:.6f}",
        "deepest_of_g_id": report.deepest_of_g_id,
        "deepest_of_f_id": report.deepest_of_f_id,
        "params": _params_dict(report.params),
    }
    return json.dumps(doc, indent=2) + "\n"


def matrix_json(labels: Sequence[str], matrix, method: str, params: DepthParams) -> str:
    M = np.asarray(matrix, dtype=float)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "homogeneity_matrix",
        "method": method,
        "labels": list(labels),
        "values": [[float(v) for v in row] for row in M],
        "params": _params_dict(params),
    }
    return json.dumps(doc, indent=2) + "\n"


def matrix_csv(labels: Sequence[str], matrix) -> str:
    M = np.asarray(matrix, dtype=float)
    if M.shape != (len(labels), len(labels)):
        raise ValueError(f"matrix shape {M.shape} does not match {len(labels)} labels")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(labels))
    for label, row in zip(labels, M):
        writer.writerow([label] + [repr(float(v)) for v in row])
    return buf.getvalue()


def serialize_result(result, format: str) -> str:
    """Serialize a depth result, homogeneity report, or labelled matrix.

    ``result`` is a DepthResult, a HomogeneityReport, or a (labels,
    matrix, method, params) tuple; format is "json" or "csv".
    """
    if format not in ("json", "csv"):
        raise ValueError(f"unknown format {format!r}; expected json or csv")
    if isinstance(result, DepthResult):
        return depth_result_json(result) if format == "json" else depth_result_csv(result)
    if isinstance(result, HomogeneityReport):
        if format == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["method", "value"])
            writer.writerow([result.method, repr(result.value)])
            return buf.getvalue()
        return homogeneity_json(result)
    if isinstance(result, tuple) and len(result) == 4:
        labels, matrix, method, params = result
        return matrix_json(labels, matrix, method, params) if format == "json" else matrix_csv(labels, matrix)
    raise TypeError(f"cannot serialize {type(result).__name__}")


def write_result(result, format: str, path) -> None:
    """serialize_result to a file with '\\n' newlines preserved."""
    text = serialize_result(result, format)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_result(path) -> DepthResult:
    """Parse a depth-result JSON file back into a DepthResult."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("kind") != "depth_result":
        raise ValueError(f"{path}: expected a depth_result document, got kind {doc.get('kind')!r}")
    params = _params_from_dict(doc.get("params", {}))
    entries = [(e["id"], e["depth"]) for e in doc.get("entries", [])]
    return DepthResult(entries, params, doc.get("method", "unknown"), tuple(doc.get("warnings", ())))
