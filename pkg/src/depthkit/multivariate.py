"""Simplicial band depth for multivariate functional samples.

A subset of d+1 curves defines one simplex per grid point (the subset's
value vectors at that time). The strict variant scores a subset 1 only
when the query's value lies inside the simplex at every grid point; the
relaxed variant scores the fraction of grid points. Depth is the score
sum over all (d+1)-subsets of the other curves divided by C(n, d+1),
under the same self-exclusion convention as band depth.

Subset size is fixed at d+1 by the geometry; the J parameter of
DepthParams has no role here and is ignored.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from ._work import chunked, map_chunks
from .geometry import points_in_simplex
from .model import DepthParams, DepthResult, FunctionalSample, MultivariateCurve

__all__ = ["simplicial_band_depth", "simplicial_band_depth_of"]


def _mv_matrix(sample: FunctionalSample) -> np.ndarray:
    if not sample.is_multivariate:
        raise ValueError(
            "simplicial band depth is defined for multivariate curves; use band_depth for univariate samples"
        )
    return sample.matrix


def _mv_subset_chunks(n: int, d: int) -> tuple[list[np.ndarray], int]:
    total = comb(n, d + 1)
    combos = np.fromiter(
        (i for c in combinations(range(n), d + 1) for i in c), dtype=np.intp, count=total * (d + 1)
    ).reshape(-1, d + 1)
    return chunked(combos), total


def _mv_all_counts(
    X: np.ndarray, relax: bool, tol: float, threads: int, quiet: bool
) -> tuple[np.ndarray, int]:
    """Integer containment counts per curve over all (d+1)-subsets.

    Strict mode counts subsets containing a curve at every grid point;
    relaxed mode counts (subset, grid point) containment pairs. X has
    shape (n, T, d).
    """
    n, T, d = X.shape
    chunks, total = _mv_subset_chunks(n, d)

    def worker(chunk: np.ndarray) -> np.ndarray:
        local = np.zeros(n, dtype=np.int64)
        for row in chunk:
            inside_t = np.empty((T, n), dtype=bool)
            for t in range(T):
                inside_t[t] = points_in_simplex(X[:, t, :], X[row, t, :], tol=tol, on_degenerate="none")
            if relax:
                per = inside_t.sum(axis=0, dtype=np.int64)
            else:
                per = inside_t.all(axis=0).astype(np.int64)
            per[row] = 0
            local += per
        return local

    parts = map_chunks(
        worker, chunks, threads=threads, quiet=quiet, label="simplicial band depth", total_units=total
    )
    counts = np.zeros(n, dtype=np.int64)
    for p in parts:
        counts += p
    return counts, total


def _mv_query_counts(
    X: np.ndarray,
    q: np.ndarray,
    relax: bool,
    tol: float,
    exclude_index: int | None = None,
    threads: int = 1,
    quiet: bool = True,
) -> tuple[int, int]:
    """Integer containment count of one query curve over subsets of X.

    q has shape (T, d); subsets through exclude_index score zero but stay
    enumerated. Returns (count, subsets enumerated).
    """
    n, T, d = X.shape
    chunks, total = _mv_subset_chunks(n, d)

    def worker(chunk: np.ndarray) -> int:
        hits = 0
        for row in chunk:
            if exclude_index is not None and np.any(row == exclude_index):
                continue
            inside = 0
            for t in range(T):
                if points_in_simplex(q[t][None, :], X[row, t, :], tol=tol, on_degenerate="none")[0]:
                    inside += 1
                elif not relax:
                    break
            if relax:
                hits += inside
            elif inside == T:
                hits += 1
        return hits

    parts = map_chunks(
        worker, chunks, threads=threads, quiet=quiet, label="simplicial band depth", total_units=total
    )
    return sum(parts), total


def simplicial_band_depth(sample: FunctionalSample, params: DepthParams, threads: int = 1) -> DepthResult:
    """Simplicial band depth (relax picks the modified variant) per curve."""
    X = _mv_matrix(sample)
    if params.containment != "simplex":
        raise ValueError(
            f"containment {params.containment!r} is not valid for multivariate curves; use simplex"
        )
    n, T, d = X.shape
    if n < d + 2:
        raise ValueError(f"need at least d+2 = {d + 2} curves, got {n}")
    if T < 1:
        raise ValueError("empty grid")
    if params.K is not None:
        from .resampling import resampled_simplicial_band_depth

        return resampled_simplicial_band_depth(sample, params, threads=threads)

    counts, _ = _mv_all_counts(X, params.relax, params.simplex_tol(), threads, params.quiet)
    denom = comb(n, d + 1) * (T if params.relax else 1)
    method = "modified_simplicial_band_depth" if params.relax else "simplicial_band_depth"
    return DepthResult(zip(sample.ids, counts / denom), params, method)


def simplicial_band_depth_of(
    sample: FunctionalSample, query: MultivariateCurve, params: DepthParams, threads: int = 1
) -> float:
    """Depth of an outside query curve with respect to sample plus query.

    Simplices are drawn from the original curves only; the denominator
    uses the enlarged count C(n+1, d+1).
    """
    X = _mv_matrix(sample)
    n, T, d = X.shape
    q = query.values
    if q.shape != (T, d):
        raise ValueError(f"query curve has shape {q.shape}, sample curves have shape {(T, d)}")
    if n + 1 < d + 2:
        raise ValueError(f"need at least d+2 = {d + 2} curves including the query, got {n + 1}")
    count, _ = _mv_query_counts(X, q, params.relax, params.simplex_tol(), None, threads, params.quiet)
    return count / (comb(n + 1, d + 1) * (T if params.relax else 1))
