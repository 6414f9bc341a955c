"""Dispatch layer: one entry point per data kind, routed by containment.

Univariate functional samples use band containment (r2); multivariate
ones use per-time simplex containment. Pointclouds accept simplex, oja,
mahalanobis, or l1. Mismatched combinations raise with a pointer to the
valid choice rather than silently coercing.
"""

from __future__ import annotations

from .bands import band_depth, band_depth_of
from .model import Curve, DepthParams, DepthResult, FunctionalSample, MultivariateCurve, PointCloud
from .multivariate import simplicial_band_depth, simplicial_band_depth_of
from .pointcloud import pointcloud_depth, pointcloud_depth_of

__all__ = [
    "functional_depth",
    "functional_depth_of",
    "pointcloud_depth",
    "pointcloud_depth_of",
    "default_containment",
]


def default_containment(sample) -> str:
    """The containment notion matching a sample's structure."""
    if isinstance(sample, PointCloud):
        return "simplex"
    return "simplex" if sample.is_multivariate else "r2"


def functional_depth(sample: FunctionalSample, params: DepthParams, threads: int = 1) -> DepthResult:
    """Depth of every curve: band depth (r2) or simplicial band depth (simplex)."""
    if params.containment == "r2":
        return band_depth(sample, params, threads=threads)
    if params.containment == "simplex":
        return simplicial_band_depth(sample, params, threads=threads)
    raise ValueError(
        f"containment {params.containment!r} is not valid for functional data; "
        "expected r2 (univariate) or simplex (multivariate)"
    )


def functional_depth_of(sample: FunctionalSample, query, params: DepthParams, threads: int = 1) -> float:
    """Depth of a query curve with respect to sample plus query."""
    if params.containment == "r2":
        if not isinstance(query, Curve):
            raise ValueError("r2 containment scores univariate Curve queries")
        return band_depth_of(sample, query, params, threads=threads)
    if params.containment == "simplex":
        if not isinstance(query, MultivariateCurve):
            raise ValueError("simplex containment scores MultivariateCurve queries")
        return simplicial_band_depth_of(sample, query, params, threads=threads)
    raise ValueError(
        f"containment {params.containment!r} is not valid for functional data; "
        "expected r2 (univariate) or simplex (multivariate)"
    )
