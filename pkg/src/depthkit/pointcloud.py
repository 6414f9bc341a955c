"""Depth of points in d-dimensional space with respect to a point cloud.

Four notions are available, selected by DepthParams.containment:

  simplex      proportion of (d+1)-point simplices containing the point
               (self-exclusion convention, like band depth)
  mahalanobis  1 / (1 + squared Mahalanobis distance to the sample mean)
  l1           1 - norm of the mean unit vector toward the other points
  oja          1 / (1 + mean volume of simplices spanned by the point and
               d of the other points)

Only the simplex notion comes with a containment-counting structure; the
other three follow the standard literature definitions and are documented
as such. Degenerate simplices count as containing nothing inside depth
sums, so a fully affinely dependent cloud yields all-zero simplicial
depths plus a warning on the result rather than an error.
"""

from __future__ import annotations

from dataclasses import replace
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from ._work import chunked, map_chunks
from .geometry import points_in_simplex
from .model import DepthParams, DepthResult, PointCloud

__all__ = [
    "simplicial_depth",
    "simplicial_depth_of",
    "mahalanobis_depth",
    "mahalanobis_depth_of",
    "l1_depth",
    "l1_depth_of",
    "oja_depth",
    "oja_depth_of",
    "pointcloud_depth",
    "pointcloud_depth_of",
]

_COINCIDENT = 1e-12

_DEGENERATE_WARNING = "all points are affinely dependent; every simplicial depth is 0"


def _cloud_array(cloud: PointCloud) -> np.ndarray:
    P = cloud.array
    if P.ndim != 2 or P.shape[0] == 0:
        raise ValueError("point cloud is empty")
    return P


def _affinely_dependent(P: np.ndarray) -> bool:
    if P.shape[0] <= P.shape[1]:
        return True
    return np.linalg.matrix_rank(P - P[0]) < P.shape[1]


def _simplex_chunks(m: int, d: int) -> tuple[list[np.ndarray], int]:
    total = comb(m, d + 1)
    combos = np.fromiter(
        (i for c in combinations(range(m), d + 1) for i in c), dtype=np.intp, count=total * (d + 1)
    ).reshape(-1, d + 1)
    return chunked(combos), total


def _simplex_all_counts(
    P: np.ndarray, tol: float, threads: int, quiet: bool
) -> tuple[np.ndarray, int]:
    """Per-point counts of containing simplices over all (d+1)-subsets.

    Subsets through the scored point contribute zero; degenerate simplices
    contribute zero to everyone.
    """
    m, d = P.shape
    chunks, total = _simplex_chunks(m, d)

    def worker(chunk: np.ndarray) -> np.ndarray:
        local = np.zeros(m, dtype=np.int64)
        for row in chunk:
            inside = points_in_simplex(P, P[row], tol=tol, on_degenerate="none")
            inside[row] = False
            local += inside
        return local

    parts = map_chunks(
        worker, chunks, threads=threads, quiet=quiet, label="simplicial depth", total_units=total
    )
    counts = np.zeros(m, dtype=np.int64)
    for p in parts:
        counts += p
    return counts, total


def _simplex_query_count(
    P: np.ndarray,
    p: np.ndarray,
    tol: float,
    exclude: Sequence[int] = (),
    threads: int = 1,
    quiet: bool = True,
) -> tuple[int, int]:
    """Count of (d+1)-subsets of P whose simplex contains the query point.

    Subsets meeting ``exclude`` indices score zero but are still
    enumerated. Returns (count, subsets enumerated).
    """
    m, d = P.shape
    chunks, total = _simplex_chunks(m, d)
    excluded = np.zeros(m, dtype=bool)
    excluded[list(exclude)] = True

    def worker(chunk: np.ndarray) -> int:
        hits = 0
        for row in chunk:
            if excluded[row].any():
                continue
            if points_in_simplex(p[None, :], P[row], tol=tol, on_degenerate="none")[0]:
                hits += 1
        return hits

    parts = map_chunks(
        worker, chunks, threads=threads, quiet=quiet, label="simplicial depth", total_units=total
    )
    return sum(parts), total


def simplicial_depth(cloud: PointCloud, params: DepthParams, threads: int = 1) -> DepthResult:
    """Simplicial depth of every cloud member.

    For each point, the proportion of (d+1)-subsets of the other points
    whose simplex contains it, with denominator C(m, d+1).
    """
    if params.containment != "simplex":
        raise ValueError(f"simplicial_depth requires containment 'simplex', got {params.containment!r}")
    P = _cloud_array(cloud)
    m, d = P.shape
    if m < d + 2:
        raise ValueError(f"need at least d+2 = {d + 2} points for self-excluding simplicial depth, got {m}")
    if params.K is not None:
        from .resampling import resampled_simplicial_depth

        return resampled_simplicial_depth(cloud, params, threads=threads)

    warnings = ()
    if _affinely_dependent(P):
        depths = np.zeros(m)
        warnings = (_DEGENERATE_WARNING,)
    else:
        counts, _ = _simplex_all_counts(P, params.simplex_tol(), threads, params.quiet)
        depths = counts / comb(m, d + 1)
    return DepthResult(zip(cloud.ids, depths), params, "simplicial_depth", warnings)


def simplicial_depth_of(p, cloud: PointCloud, params: DepthParams, threads: int = 1) -> float:
    """Simplicial depth of an arbitrary point against the cloud's simplices.

    Denominator C(m, d+1) over the cloud itself. When the query equals a
    cloud member exactly, that member's subsets are excluded from the
    numerator, matching the self-exclusion convention.
    """
    P = _cloud_array(cloud)
    q = np.asarray(p, dtype=float)
    m, d = P.shape
    if q.shape != (d,):
        raise ValueError(f"query point has shape {q.shape}, cloud points have dimension {d}")
    if m < d + 1:
        raise ValueError(f"need at least d+1 = {d + 1} points, got {m}")
    coincident = np.flatnonzero(np.all(P == q, axis=1))
    count, _ = _simplex_query_count(P, q, params.simplex_tol(), coincident, threads, params.quiet)
    return count / comb(m, d + 1)


def _mean_and_covariance(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m, d = P.shape
    mu = P.mean(axis=0)
    centered = P - mu
    cov = centered.T @ centered / (m - 1)
    # Regularize once the smallest eigenvalue drops below the scaled floor,
    # so degenerate clouds stay defined without disturbing well-posed ones.
    tr = float(np.trace(cov))
    floor = 1e-12 * tr / d if tr > 0 else 1e-12
    smallest = float(np.linalg.eigvalsh(cov)[0])
    if smallest < floor:
        cov = cov + floor * np.eye(d)
    return mu, cov


def _mahalanobis_values(P: np.ndarray, queries: np.ndarray) -> np.ndarray:
    mu, cov = _mean_and_covariance(P)
    centered = queries - mu
    solved = np.linalg.solve(cov, centered.T).T
    quad = np.maximum(np.einsum("ij,ij->i", centered, solved), 0.0)
    return 1.0 / (1.0 + quad)


def mahalanobis_depth(cloud: PointCloud, params: DepthParams | None = None) -> DepthResult:
    """Mahalanobis depth 1/(1 + squared distance to the mean) per point.

    Sample covariance uses the m-1 divisor.
    """
    P = _cloud_array(cloud)
    if P.shape[0] < 2:
        raise ValueError(f"need at least 2 points, got {P.shape[0]}")
    if params is None:
        params = DepthParams(containment="mahalanobis")
    depths = _mahalanobis_values(P, P)
    return DepthResult(zip(cloud.ids, depths), params, "mahalanobis_depth")


def mahalanobis_depth_of(p, cloud: PointCloud) -> float:
    """Mahalanobis depth of a query with respect to cloud plus query."""
    P = _cloud_array(cloud)
    q = np.asarray(p, dtype=float)
    joined = np.vstack([P, q[None, :]])
    return float(_mahalanobis_values(joined, q[None, :])[0])


def _l1_value(others: np.ndarray, x: np.ndarray) -> float:
    diffs = others - x
    norms = np.sqrt((diffs * diffs).sum(axis=1))
    unit = np.zeros_like(diffs)
    ok = norms >= _COINCIDENT
    unit[ok] = diffs[ok] / norms[ok, None]
    mean = unit.sum(axis=0) / others.shape[0]
    return float(1.0 - np.sqrt((mean * mean).sum()))


def l1_depth(cloud: PointCloud, params: DepthParams | None = None) -> DepthResult:
    """Spatial depth: 1 - norm of the mean unit vector toward the others.

    Coincident points contribute a zero vector but stay in the average.
    """
    P = _cloud_array(cloud)
    m = P.shape[0]
    if m < 2:
        raise ValueError(f"need at least 2 points, got {m}")
    if params is None:
        params = DepthParams(containment="l1")
    keep = np.ones(m, dtype=bool)
    depths = np.empty(m)
    for i in range(m):
        keep[i] = False
        depths[i] = _l1_value(P[keep], P[i])
        keep[i] = True
    return DepthResult(zip(cloud.ids, depths), params, "l1_depth")


def l1_depth_of(p, cloud: PointCloud) -> float:
    """Spatial depth of a query point toward all cloud members."""
    P = _cloud_array(cloud)
    q = np.asarray(p, dtype=float)
    return _l1_value(P, q)


def _oja_mean_volume(base: np.ndarray, apex: np.ndarray, threads: int, quiet: bool) -> float:
    """Mean volume of simplices (apex, d points of base) over all d-subsets.

    Summation runs in fixed chunk order, so the floating-point total is
    identical for any thread count.
    """
    m, d = base.shape
    total = comb(m, d)
    combos = np.fromiter(
        (i for c in combinations(range(m), d) for i in c), dtype=np.intp, count=total * d
    ).reshape(-1, d)
    chunks = chunked(combos)

    def worker(chunk: np.ndarray) -> float:
        edges = base[chunk] - apex[None, None, :]        # (c, d, d)
        dets = np.linalg.det(edges)
        return float(np.abs(dets).sum())

    parts = map_chunks(worker, chunks, threads=threads, quiet=quiet, label="oja depth", total_units=total)
    factorial = 1.0
    for i in range(2, d + 1):
        factorial *= i
    return sum(parts) / factorial / total


def oja_depth(cloud: PointCloud, params: DepthParams | None = None, threads: int = 1) -> DepthResult:
    """Oja depth: 1/(1 + mean simplex volume over d-subsets of the others)."""
    P = _cloud_array(cloud)
    m, d = P.shape
    if m < d + 1:
        raise ValueError(f"need at least d+1 = {d + 1} points, got {m}")
    if params is None:
        params = DepthParams(containment="oja")
    keep = np.ones(m, dtype=bool)
    depths = np.empty(m)
    for i in range(m):
        keep[i] = False
        depths[i] = 1.0 / (1.0 + _oja_mean_volume(P[keep], P[i], threads, params.quiet))
        keep[i] = True
    return DepthResult(zip(cloud.ids, depths), params, "oja_depth")


def oja_depth_of(p, cloud: PointCloud, threads: int = 1) -> float:
    """Oja depth of a query point, simplices drawn from the cloud."""
    P = _cloud_array(cloud)
    q = np.asarray(p, dtype=float)
    m, d = P.shape
    if m < d:
        raise ValueError(f"need at least d = {d} points, got {m}")
    return 1.0 / (1.0 + _oja_mean_volume(P, q, 1, True))


def pointcloud_depth(cloud: PointCloud, params: DepthParams, threads: int = 1) -> DepthResult:
    """Depth of every cloud member under params.containment."""
    if params.containment == "simplex":
        return simplicial_depth(cloud, params, threads=threads)
    if params.K is not None:
        raise ValueError(
            f"block resampling (K) is not supported for containment {params.containment!r}; "
            "it approximates subset-enumeration depths (simplex, r2)"
        )
    if params.containment == "mahalanobis":
        return mahalanobis_depth(cloud, params)
    if params.containment == "l1":
        return l1_depth(cloud, params)
    if params.containment == "oja":
        return oja_depth(cloud, params, threads=threads)
    raise ValueError(
        f"containment {params.containment!r} is not valid for pointcloud data; "
        "expected simplex, oja, mahalanobis, or l1"
    )


def pointcloud_depth_of(p, cloud: PointCloud, params: DepthParams, threads: int = 1) -> float:
    """Depth of a query point with respect to cloud plus query.

    This is the kernel used by the homogeneity coefficients: the query
    joins the cloud, simplices (for simplex containment) are drawn from
    the original points only, and the denominator uses C(m+1, d+1).
    """
    P = _cloud_array(cloud)
    q = np.asarray(p, dtype=float)
    m, d = P.shape
    if q.shape != (d,):
        raise ValueError(f"query point has shape {q.shape}, cloud points have dimension {d}")
    if params.containment == "simplex":
        count, _ = _simplex_query_count(P, q, params.simplex_tol(), (), threads, params.quiet)
        return count / comb(m + 1, d + 1)
    if params.containment == "mahalanobis":
        return mahalanobis_depth_of(q, cloud)
    if params.containment == "l1":
        return l1_depth_of(q, cloud)
    if params.containment == "oja":
        return oja_depth_of(q, cloud, threads=threads)
    raise ValueError(
        f"containment {params.containment!r} is not valid for pointcloud data; "
        "expected simplex, oja, mahalanobis, or l1"
    )
