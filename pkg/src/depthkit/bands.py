"""Band depth and modified band depth for univariate functional samples.

The depth of a curve is the proportion of j-curve envelopes (j = 2..J)
that contain its graph. Envelopes whose defining set includes the query
curve are excluded from the numerator while the denominator stays C(n, j);
this is the self-exclusion convention used across the package. The
modified variant scores each envelope by the fraction of grid points at
which the curve is inside instead of all-or-nothing.

All numerators are integer counts divided once at the end, so results are
bit-identical regardless of thread count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from ._work import chunked, map_chunks
from .model import Curve, DepthParams, DepthResult, FunctionalSample

__all__ = [
    "Envelope",
    "envelope",
    "contains",
    "containment_fraction",
    "band_depth",
    "band_depth_term",
    "band_depth_of",
]


@dataclass(frozen=True)
class Envelope:
    """Pointwise lower/upper bounds of a set of curves."""

    lower: np.ndarray
    upper: np.ndarray

    def __init__(self, lower, upper):
        lo = np.asarray(lower, dtype=float).copy()
        hi = np.asarray(upper, dtype=float).copy()
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError(f"lower/upper must be equal-length vectors, got {lo.shape} and {hi.shape}")
        if np.any(lo > hi):
            t = int(np.argmax(lo > hi))
            raise ValueError(f"lower exceeds upper at index {t}")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def __len__(self) -> int:
        return self.lower.shape[0]


def envelope(sample: FunctionalSample, indices: Sequence[int]) -> Envelope:
    """Envelope of the curves at the given indices (min/max per grid point)."""
    if len(indices) == 0:
        raise ValueError("indices must be nonempty")
    if len(set(indices)) != len(indices):
        raise ValueError("indices must be distinct")
    n = sample.n
    for i in indices:
        if not 0 <= i < n:
            raise IndexError(f"curve index {i} out of range for a sample of {n}")
    block = sample.matrix[list(indices)]
    return Envelope(block.min(axis=0), block.max(axis=0))


def _curve_values(x) -> np.ndarray:
    return x.values if isinstance(x, Curve) else np.asarray(x, dtype=float)


def contains(env: Envelope, x, tol: float = 0.0) -> bool:
    """True iff x is inside the envelope at every grid point.

    Closed inequalities; tol widens the band to [lower-tol, upper+tol].
    Stops at the first escaping point.
    """
    values = _curve_values(x)
    if values.shape[0] != len(env):
        raise ValueError(f"curve has {values.shape[0]} points, envelope has {len(env)}")
    for t in range(values.shape[0]):
        v = values[t]
        if v < env.lower[t] - tol or v > env.upper[t] + tol:
            return False
    return True


def containment_fraction(env: Envelope, x, tol: float = 0.0) -> float:
    """Fraction of grid points at which x is inside the envelope."""
    values = _curve_values(x)
    if values.shape[0] != len(env):
        raise ValueError(f"curve has {values.shape[0]} points, envelope has {len(env)}")
    inside = np.logical_and(values >= env.lower - tol, values <= env.upper + tol)
    return float(int(inside.sum()) / values.shape[0])


def _check_univariate(sample: FunctionalSample) -> np.ndarray:
    if sample.is_multivariate:
        raise ValueError(
            "band depth is defined for univariate curves; use simplicial_band_depth for multivariate samples"
        )
    return sample.matrix


def _subset_chunks(n: int, j: int) -> list[np.ndarray]:
    combos = np.fromiter(
        (i for c in combinations(range(n), j) for i in c), dtype=np.intp, count=comb(n, j) * j
    ).reshape(-1, j)
    return chunked(combos)


def _all_counts(
    X: np.ndarray, j: int, relax: bool, tol: float, threads: int, quiet: bool, label: str
) -> tuple[np.ndarray, int]:
    """Per-curve integer containment counts over all j-subsets.

    Strict mode counts containing envelopes; relaxed mode counts contained
    (envelope, grid point) pairs. Subsets containing the scored curve
    contribute zero either way.
    """
    n, T = X.shape
    chunks = _subset_chunks(n, j)
    total = comb(n, j)

    def worker(chunk: np.ndarray) -> np.ndarray:
        sub = X[chunk]                      # (c, j, T)
        lo = sub.min(axis=1)                # (c, T)
        hi = sub.max(axis=1)
        inside = np.logical_and(
            X[None, :, :] >= lo[:, None, :] - tol,
            X[None, :, :] <= hi[:, None, :] + tol,
        )                                   # (c, n, T)
        if relax:
            per = inside.sum(axis=2, dtype=np.int64)        # (c, n)
        else:
            per = inside.all(axis=2).astype(np.int64)
        rows = np.arange(chunk.shape[0])[:, None]
        per[rows, chunk] = 0                # self-exclusion
        return per.sum(axis=0, dtype=np.int64)

    parts = map_chunks(worker, chunks, threads=threads, quiet=quiet, label=label, total_units=total)
    counts = np.zeros(n, dtype=np.int64)
    for p in parts:
        counts += p
    return counts, total


def _query_counts(
    X: np.ndarray,
    q: np.ndarray,
    j: int,
    relax: bool,
    tol: float,
    exclude_index: int | None = None,
    threads: int = 1,
    quiet: bool = True,
    label: str = "band depth",
) -> tuple[int, int]:
    """Integer containment count of a single query over j-subsets of X.

    ``exclude_index`` marks the query's own row within X when it is a
    member; subsets through that row score zero but are still enumerated.
    Returns (count, number of subsets enumerated).
    """
    n, T = X.shape
    chunks = _subset_chunks(n, j)
    total = comb(n, j)

    def worker(chunk: np.ndarray) -> int:
        sub = X[chunk]
        lo = sub.min(axis=1)
        hi = sub.max(axis=1)
        inside = np.logical_and(q >= lo - tol, q <= hi + tol)   # (c, T)
        if relax:
            per = inside.sum(axis=1, dtype=np.int64)
        else:
            per = inside.all(axis=1).astype(np.int64)
        if exclude_index is not None:
            per[np.any(chunk == exclude_index, axis=1)] = 0
        return int(per.sum())

    parts = map_chunks(worker, chunks, threads=threads, quiet=quiet, label=label, total_units=total)
    return sum(parts), total


def band_depth_term(
    sample: FunctionalSample, j: int, relax: bool = False, tol: float = 0.0, threads: int = 1, quiet: bool = True
) -> np.ndarray:
    """The single-j term of band depth for every curve, in input order.

    Each value lies in [0, 1]; summing terms for j = 2..J gives the full
    depth. Exposed separately so bounds can be checked per term.
    """
    X = _check_univariate(sample)
    n, T = X.shape
    if n < j + 1:
        raise ValueError(f"need at least {j + 1} curves for the j={j} term, got {n}")
    counts, _ = _all_counts(X, j, relax, tol, threads, quiet, f"band depth (j={j})")
    denom = comb(n, j) * (T if relax else 1)
    return counts / denom


def band_depth(sample: FunctionalSample, params: DepthParams, threads: int = 1) -> DepthResult:
    """Band depth (or modified band depth when relax) of every curve.

    Exact computation sums the j = 2..J terms; params.K switches to the
    block-resampling approximation.
    """
    X = _check_univariate(sample)
    if params.containment != "r2":
        raise ValueError(
            f"containment {params.containment!r} is not valid for univariate curves; use r2"
        )
    n = sample.n
    if n < params.J + 1:
        raise ValueError(f"need at least J+1 = {params.J + 1} curves, got {n}")

    if params.K is not None:
        from .resampling import resampled_band_depth

        return resampled_band_depth(sample, params, threads=threads)

    T = X.shape[1]
    tol = params.band_tol()
    depths = np.zeros(n)
    for j in range(2, params.J + 1):
        counts, _ = _all_counts(X, j, params.relax, tol, threads, params.quiet, f"band depth (j={j})")
        depths += counts / (comb(n, j) * (T if params.relax else 1))
    method = "modified_band_depth" if params.relax else "band_depth"
    return DepthResult(zip(sample.ids, depths), params, method)


def band_depth_of(sample: FunctionalSample, query: Curve, params: DepthParams, threads: int = 1) -> float:
    """Depth of an outside query curve with respect to sample plus query.

    The query joins the sample; envelopes are drawn from the original
    curves only (none can include the query), and the denominator uses the
    enlarged count C(n+1, j). Curves of the sample that happen to equal
    the query still participate.
    """
    X = _check_univariate(sample)
    q = query.values
    if q.shape[0] != X.shape[1]:
        raise ValueError(f"query has {q.shape[0]} points, sample grid has {X.shape[1]}")
    n, T = X.shape
    if n + 1 < params.J + 1:
        raise ValueError(f"need at least J+1 = {params.J + 1} curves including the query, got {n + 1}")
    tol = params.band_tol()
    total = 0.0
    for j in range(2, params.J + 1):
        count, _ = _query_counts(X, q, j, params.relax, tol, None, threads, params.quiet)
        total += count / (comb(n + 1, j) * (T if params.relax else 1))
    return total
