"""Shared data model and validation for all depth computations.

The container types here are deliberately permissive at construction time:
they coerce values to floats and freeze them, but they do not scan for
NaN/Inf, ragged shapes, or grid monotonicity. Those checks live in
:func:`validate_functional` and :func:`validate_pointcloud`, which return a
report of every violation found so callers can decide whether to abort.
A sample that passes deep validation will never make a depth computation
fail on data grounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

__all__ = [
    "TimeGrid",
    "Curve",
    "MultivariateCurve",
    "FunctionalSample",
    "PointCloud",
    "DepthParams",
    "DepthResult",
    "Violation",
    "ValidationReport",
    "CONTAINMENT_METHODS",
    "validate_functional",
    "validate_pointcloud",
    "functional_sample_from_array",
    "point_cloud_from_array",
]

CONTAINMENT_METHODS = ("r2", "simplex", "oja", "mahalanobis", "l1")


def _frozen_float_array(values, ndim: int) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array of numbers, got shape {arr.shape}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TimeGrid:
    """Ordered time coordinates shared by every curve of a sample.

    Coordinates are used for plotting and ordering only; the modified
    depth measures weight grid points equally (counting measure).
    """

    points: np.ndarray

    def __init__(self, points: Sequence[float]):
        object.__setattr__(self, "points", _frozen_float_array(points, 1))

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class Curve:
    """A univariate curve: one value per grid point."""

    id: str
    values: np.ndarray

    def __init__(self, id: str, values: Sequence[float]):
        object.__setattr__(self, "id", str(id))
        object.__setattr__(self, "values", _frozen_float_array(values, 1))

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class MultivariateCurve:
    """A multivariate curve: one d-vector per grid point.

    Rows are kept individually so that ragged input can be represented and
    reported by validation instead of blowing up at construction.
    """

    id: str
    rows: tuple[np.ndarray, ...]

    def __init__(self, id: str, values: Sequence[Sequence[float]]):
        object.__setattr__(self, "id", str(id))
        rows = tuple(_frozen_float_array(row, 1) for row in values)
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.rows[0].shape[0] if self.rows else 0

    @cached_property
    def values(self) -> np.ndarray:
        """(grid length, d) matrix. Requires rectangular rows."""
        arr = np.stack(self.rows) if self.rows else np.empty((0, 0))
        arr.flags.writeable = False
        return arr


AnyCurve = Union[Curve, MultivariateCurve]


@dataclass(frozen=True)
class FunctionalSample:
    """n curves (univariate or multivariate, homogeneously) on one grid."""

    grid: TimeGrid
    curves: tuple[AnyCurve, ...]

    def __init__(self, grid: TimeGrid, curves: Sequence[AnyCurve]):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "curves", tuple(curves))

    @property
    def n(self) -> int:
        return len(self.curves)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.curves)

    @property
    def is_multivariate(self) -> bool:
        return bool(self.curves) and isinstance(self.curves[0], MultivariateCurve)

    @property
    def dim(self) -> int:
        """Value dimension per grid point: 1 for univariate curves."""
        if not self.curves:
            return 0
        return self.curves[0].dim if self.is_multivariate else 1

    @cached_property
    def matrix(self) -> np.ndarray:
        """(n, T) for univariate samples, (n, T, d) for multivariate ones."""
        arr = np.stack([c.values for c in self.curves])
        arr.flags.writeable = False
        return arr

    def index_of(self, curve_id: str) -> int:
        for i, c in enumerate(self.curves):
            if c.id == curve_id:
                return i
        raise KeyError(f"no curve with id {curve_id!r}")

    def with_curve(self, curve: AnyCurve) -> "FunctionalSample":
        """New sample with ``curve`` appended (grid unchanged)."""
        return FunctionalSample(self.grid, self.curves + (curve,))

    def without(self, ids: Sequence[str]) -> "FunctionalSample":
        drop = set(ids)
        return FunctionalSample(self.grid, [c for c in self.curves if c.id not in drop])

    def subset(self, ids: Sequence[str]) -> "FunctionalSample":
        keep = set(ids)
        return FunctionalSample(self.grid, [c for c in self.curves if c.id in keep])


@dataclass(frozen=True)
class PointCloud:
    """m labelled points in d-dimensional real space."""

    ids: tuple[str, ...]
    rows: tuple[np.ndarray, ...]

    def __init__(self, ids: Sequence[str], points: Sequence[Sequence[float]]):
        object.__setattr__(self, "ids", tuple(str(i) for i in ids))
        rows = tuple(_frozen_float_array(row, 1) for row in points)
        object.__setattr__(self, "rows", rows)
        if len(self.ids) != len(self.rows):
            raise ValueError(f"{len(self.ids)} ids for {len(self.rows)} points")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return self.rows[0].shape[0] if self.rows else 0

    @cached_property
    def array(self) -> np.ndarray:
        """(m, d) matrix. Requires rectangular rows."""
        arr = np.stack(self.rows) if self.rows else np.empty((0, 0))
        arr.flags.writeable = False
        return arr

    def index_of(self, point_id: str) -> int:
        try:
            return self.ids.index(point_id)
        except ValueError:
            raise KeyError(f"no point with id {point_id!r}") from None

    def with_point(self, point_id: str, point: Sequence[float]) -> "PointCloud":
        return PointCloud(self.ids + (str(point_id),), list(self.rows) + [point])

    def without(self, ids: Sequence[str]) -> "PointCloud":
        drop = set(ids)
        keep = [i for i, pid in enumerate(self.ids) if pid not in drop]
        return PointCloud([self.ids[i] for i in keep], [self.rows[i] for i in keep])

    def subset(self, ids: Sequence[str]) -> "PointCloud":
        keep_set = set(ids)
        keep = [i for i, pid in enumerate(self.ids) if pid in keep_set]
        return PointCloud([self.ids[i] for i in keep], [self.rows[i] for i in keep])


@dataclass(frozen=True)
class DepthParams:
    """Knobs shared by every depth computation.

    J           number of band levels summed for band depth (>= 2).
    K           block count for the resampling approximation; None = exact.
    containment "r2" (univariate bands), "simplex", "oja", "mahalanobis", "l1".
    relax       False = all-or-nothing containment, True = time-fraction.
    seed        RNG seed for resampling partitions.
    tol         containment tolerance. None picks the per-method default:
                0.0 for band containment (closed inequalities, no epsilon)
                and 1e-9 on barycentric coordinates for simplex containment.
    quiet       suppress progress reporting on stderr.
    """

    J: int = 2
    K: int | None = None
    containment: str = "r2"
    relax: bool = False
    seed: int | None = None
    tol: float | None = None
    quiet: bool = False

    def __post_init__(self):
        if self.J < 2:
            raise ValueError(f"J must be an integer >= 2, got {self.J}")
        if self.K is not None and self.K < 1:
            raise ValueError(f"K must be an integer >= 1, got {self.K}")
        if self.containment not in CONTAINMENT_METHODS:
            raise ValueError(
                f"unknown containment {self.containment!r}; expected one of {', '.join(CONTAINMENT_METHODS)}"
            )
        if self.tol is not None and self.tol < 0:
            raise ValueError(f"tol must be nonnegative, got {self.tol}")

    def band_tol(self) -> float:
        return 0.0 if self.tol is None else self.tol

    def simplex_tol(self) -> float:
        return 1e-9 if self.tol is None else self.tol


@dataclass(frozen=True)
class DepthResult:
    """Per-item depth values, in input order, with the parameters echoed."""

    entries: tuple[tuple[str, float], ...]
    params: DepthParams
    method: str
    warnings: tuple[str, ...] = ()

    def __init__(self, entries, params: DepthParams, method: str, warnings=()):
        object.__setattr__(self, "entries", tuple((str(i), float(d)) for i, d in entries))
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "warnings", tuple(warnings))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(i for i, _ in self.entries)

    @property
    def depths(self) -> np.ndarray:
        return np.array([d for _, d in self.entries])

    def depth_of(self, item_id: str) -> float:
        for i, d in self.entries:
            if i == item_id:
                return d
        raise KeyError(f"no entry with id {item_id!r}")


@dataclass(frozen=True)
class Violation:
    kind: str      # "shape" | "value" | "uniqueness" | "grid"
    subject: str   # offending curve/point/grid identifier
    detail: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.subject}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def __init__(self, violations=()):
        object.__setattr__(self, "violations", tuple(violations))

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "no violations"
        return "; ".join(str(v) for v in self.violations)


def _scan_finite(values: np.ndarray, subject: str, out: list[Violation]) -> None:
    bad = np.flatnonzero(~np.isfinite(values))
    for idx in bad:
        val = values[idx]
        name = "NaN" if math.isnan(val) else "Inf"
        out.append(Violation("value", subject, f"non-finite value ({name}) at index {int(idx)}"))


def validate_functional(sample: FunctionalSample, deep: bool = False) -> ValidationReport:
    """Check a functional sample; shallow = shapes and id uniqueness only.

    Deep validation additionally scans every value for NaN/Inf and checks
    that the grid is finite and strictly increasing. Idempotent and
    side-effect free; the report lists every violation found.
    """
    out: list[Violation] = []
    grid_len = len(sample.grid)

    seen: set[str] = set()
    for c in sample.curves:
        if c.id in seen:
            out.append(Violation("uniqueness", c.id, "duplicate curve id"))
        seen.add(c.id)

    multivariate = sample.is_multivariate
    dim = sample.dim
    for c in sample.curves:
        if isinstance(c, MultivariateCurve) != multivariate:
            out.append(Violation("shape", c.id, "mixes univariate and multivariate curves"))
            continue
        if len(c) != grid_len:
            out.append(Violation("shape", c.id, f"{len(c)} values for a grid of length {grid_len}"))
        if multivariate:
            for t, row in enumerate(c.rows):
                if row.shape[0] != dim:
                    out.append(
                        Violation("shape", c.id, f"row {t} has {row.shape[0]} entries, expected {dim}")
                    )

    if deep:
        if grid_len == 0:
            out.append(Violation("grid", "grid", "empty grid"))
        gp = sample.grid.points
        if not np.all(np.isfinite(gp)):
            out.append(Violation("grid", "grid", "non-finite grid coordinate"))
        elif grid_len > 1 and not np.all(np.diff(gp) > 0):
            out.append(Violation("grid", "grid", "grid coordinates are not strictly increasing"))
        for c in sample.curves:
            if multivariate and isinstance(c, MultivariateCurve):
                for t, row in enumerate(c.rows):
                    if not np.all(np.isfinite(row)):
                        out.append(Violation("value", c.id, f"non-finite value at index {t}"))
            elif isinstance(c, Curve):
                _scan_finite(c.values, c.id, out)

    return ValidationReport(out)


def validate_pointcloud(cloud: PointCloud, deep: bool = False) -> ValidationReport:
    """Check a point cloud; analogous to :func:`validate_functional`."""
    out: list[Violation] = []

    seen: set[str] = set()
    for pid in cloud.ids:
        if pid in seen:
            out.append(Violation("uniqueness", pid, "duplicate point id"))
        seen.add(pid)

    dim = cloud.dim
    for pid, row in zip(cloud.ids, cloud.rows):
        if row.shape[0] != dim:
            out.append(Violation("shape", pid, f"{row.shape[0]} coordinates, expected {dim}"))

    if deep:
        for pid, row in zip(cloud.ids, cloud.rows):
            _scan_finite(row, pid, out)

    return ValidationReport(out)


def functional_sample_from_array(X, ids: Sequence[str] | None = None, grid=None) -> FunctionalSample:
    """Build a sample from a (n, T) or (n, T, d) array.

    Row index becomes the id (as a string) when ids are not given; the grid
    defaults to 0..T-1.
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim not in (2, 3):
        raise ValueError(f"expected a (n, T) or (n, T, d) array, got shape {arr.shape}")
    n, T = arr.shape[0], arr.shape[1]
    if ids is None:
        ids = [str(i) for i in range(n)]
    elif len(ids) != n:
        raise ValueError(f"{len(ids)} ids for {n} curves")
    if grid is None:
        grid = np.arange(T, dtype=float)
    tg = grid if isinstance(grid, TimeGrid) else TimeGrid(grid)
    if arr.ndim == 2:
        curves = [Curve(i, row) for i, row in zip(ids, arr)]
    else:
        curves = [MultivariateCurve(i, row) for i, row in zip(ids, arr)]
    return FunctionalSample(tg, curves)


def point_cloud_from_array(X, ids: Sequence[str] | None = None) -> PointCloud:
    """Build a point cloud from a (m, d) array; row index ids by default."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"expected a (m, d) array, got shape {arr.shape}")
    if ids is None:
        ids = [str(i) for i in range(arr.shape[0])]
    return PointCloud(ids, arr)
