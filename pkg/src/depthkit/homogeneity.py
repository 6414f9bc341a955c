"""Homogeneity coefficients between two samples sharing a structure.

The building block is the depth of an item g with respect to a sample F
it need not belong to: g joins F, envelopes or simplices are drawn from
F's own members only, and the denominator counts subsets of the enlarged
sample. When g duplicates a member of F, the duplicate stays in F, so
the coefficient of a sample against itself is well defined.

p1(F, G) is the depth, within F, of G's deepest element; p2 is the
absolute difference |p1(F, G) - p1(F, F)|, which is exactly 0 when G is
F. Values near the self-referential baseline suggest the two samples
come from the same generating process; p1 and p2 are not symmetric in
their arguments. Methods p3 and p4 appear in parts of the homogeneity
literature but have no published definition to implement (see Flores,
Lillo, Romo 2018), so they are rejected by name.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .depths import functional_depth_of, pointcloud_depth_of
from .model import Curve, DepthParams, FunctionalSample, MultivariateCurve, PointCloud

__all__ = [
    "HomogeneityReport",
    "HOMOGENEITY_METHODS",
    "depth_wrt",
    "deepest_in",
    "p1",
    "p2",
    "homogeneity",
    "homogeneity_matrix",
]

HOMOGENEITY_METHODS = ("p1", "p2")


@dataclass(frozen=True)
class HomogeneityReport:
    method: str
    value: float
    deepest_of_g_id: str | None
    deepest_of_f_id: str | None
    params: DepthParams


def check_method(method: str) -> str:
    if method in HOMOGENEITY_METHODS:
        return method
    if method in ("p3", "p4"):
        raise ValueError(
            f"homogeneity method {method!r} is named in the literature but never defined "
            "(see Flores, Lillo, Romo 2018); use p1 or p2"
        )
    raise ValueError(f"unknown homogeneity method {method!r}; expected p1 or p2")


def _check_compatible(F, G) -> None:
    if isinstance(F, PointCloud) != isinstance(G, PointCloud):
        raise ValueError("cannot compare a functional sample with a point cloud")
    if isinstance(F, PointCloud):
        if F.dim != G.dim:
            raise ValueError(f"point clouds have different dimensions ({F.dim} vs {G.dim})")
        return
    if len(F.grid) != len(G.grid):
        raise ValueError(
            f"samples have different grid lengths ({len(F.grid)} vs {len(G.grid)}); "
            "cross-grid comparison is not defined"
        )
    if F.is_multivariate != G.is_multivariate:
        raise ValueError("cannot compare univariate and multivariate samples")
    if F.is_multivariate and F.dim != G.dim:
        raise ValueError(f"samples have different value dimensions ({F.dim} vs {G.dim})")


def depth_wrt(g, F, params: DepthParams, threads: int = 1) -> float:
    """Depth of item g with respect to F plus g.

    g is a Curve/MultivariateCurve for functional F, or a coordinate
    vector for a PointCloud F.
    """
    if isinstance(F, PointCloud):
        return pointcloud_depth_of(g, F, params, threads=threads)
    if not isinstance(g, (Curve, MultivariateCurve)):
        raise ValueError(f"expected a curve, got {type(g).__name__}")
    if len(g) != len(F.grid):
        raise ValueError(
            f"query has {len(g)} grid points, sample has {len(F.grid)}; "
            "cross-grid comparison is not defined"
        )
    return functional_depth_of(F, g, params, threads=threads)


def _members(sample) -> list[tuple[str, object]]:
    if isinstance(sample, PointCloud):
        return list(zip(sample.ids, sample.rows))
    return [(c.id, c) for c in sample.curves]


def deepest_in(G, wrt, params: DepthParams, threads: int = 1) -> tuple[str, float]:
    """The member of G with the highest depth with respect to ``wrt``.

    Ties break toward the lexicographically smaller id.
    """
    members = _members(G)
    if not members:
        raise ValueError("sample is empty")
    _check_compatible(G, wrt)
    best_id: str | None = None
    best = -np.inf
    for item_id, item in members:
        d = depth_wrt(item, wrt, params, threads=threads)
        if d > best or (d == best and (best_id is None or item_id < best_id)):
            best_id, best = item_id, d
    return best_id, best


def p1(F, G, params: DepthParams, threads: int = 1) -> HomogeneityReport:
    """Depth, within F, of G's own deepest element."""
    _check_compatible(F, G)
    g_star, _ = deepest_in(G, G, params, threads=threads)
    members = dict(_members(G))
    value = depth_wrt(members[g_star], F, params, threads=threads)
    return HomogeneityReport("p1", value, g_star, None, params)


def p2(F, G, params: DepthParams, threads: int = 1) -> HomogeneityReport:
    """Absolute deviation of p1(F, G) from the baseline p1(F, F)."""
    _check_compatible(F, G)
    across = p1(F, G, params, threads=threads)
    baseline = p1(F, F, params, threads=threads)
    value = abs(across.value - baseline.value)
    return HomogeneityReport("p2", value, across.deepest_of_g_id, baseline.deepest_of_g_id, params)


def homogeneity(F, G, method: str, params: DepthParams, threads: int = 1) -> HomogeneityReport:
    """p1 or p2 by name; p3/p4 are rejected as undefined."""
    method = check_method(method)
    return p1(F, G, params, threads=threads) if method == "p1" else p2(F, G, params, threads=threads)


def homogeneity_matrix(groups, method: str, params: DepthParams, threads: int = 1) -> np.ndarray:
    """Full pairwise coefficient matrix M[i][j] = method(group_i, group_j).

    The diagonal is included and no symmetry is assumed. Each group's
    deepest element is located once and reused across cells, which leaves
    every cell bit-identical to a direct p1/p2 call on that pair.
    """
    method = check_method(method)
    k = len(groups)
    if k < 2:
        raise ValueError(f"need at least 2 groups, got {k}")
    for i in range(1, k):
        _check_compatible(groups[0], groups[i])

    stars = []
    for g in groups:
        star_id, _ = deepest_in(g, g, params, threads=threads)
        stars.append(dict(_members(g))[star_id])

    base = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            base[i, j] = depth_wrt(stars[j], groups[i], params, threads=threads)
    if method == "p1":
        return base
    return np.abs(base - np.diag(base)[:, None])
