"""Block-resampling approximation for subset-enumeration depths.

For each query item, all n items are partitioned into K blocks by a
seeded shuffle, the item's depth is computed against every block (the
item joins blocks it does not belong to; its own block keeps the usual
self-exclusion), and the K per-block depths are averaged. Per-block
denominators use the block-plus-query size, so K=1 reproduces the exact
depth bit for bit.

Each block enumerates only its own C(block size, j) subsets, so the work
per query is K·C(n/K, j) instead of C(n, j). The partition is drawn per
query item from a seed derived as the first 8 bytes of
sha256("<seed>|<item id>"), fed to a PCG64 generator, which keeps every
item's partition reproducible across platforms and thread counts. A
missing seed means seed 0, and the seed actually used is echoed in the
result parameters.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from math import comb
from typing import Callable, Sequence

import numpy as np

from ._work import ProgressMeter
from .model import DepthParams, DepthResult, FunctionalSample, PointCloud

__all__ = [
    "BlockPartition",
    "partition",
    "item_seed",
    "EvaluationCounter",
    "resampled_depth",
    "resampled_band_depth",
    "resampled_simplicial_band_depth",
    "resampled_simplicial_depth",
]


@dataclass(frozen=True)
class BlockPartition:
    """K disjoint blocks of indices covering the input exactly once."""

    blocks: tuple[tuple[int, ...], ...]
    seed: int


def partition(indices: Sequence[int], K: int, seed: int) -> BlockPartition:
    """Seeded shuffle of ``indices`` split into K near-equal blocks.

    The first len(indices) mod K blocks receive one extra element, so
    block sizes differ by at most 1. Identical seeds give identical
    partitions.
    """
    n = len(indices)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if K > n:
        raise ValueError(f"K={K} exceeds the feasible maximum for {n} items")
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(n)
    shuffled = [indices[i] for i in order]
    base, extra = divmod(n, K)
    blocks = []
    pos = 0
    for b in range(K):
        size = base + (1 if b < extra else 0)
        blocks.append(tuple(shuffled[pos: pos + size]))
        pos += size
    return BlockPartition(tuple(blocks), seed)


def item_seed(seed: int, item_id: str) -> int:
    """Per-item 64-bit seed: first 8 bytes of sha256("<seed>|<item id>")."""
    digest = hashlib.sha256(f"{seed}|{item_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class EvaluationCounter:
    """Counts enumerated subsets across resampled-depth calls."""

    def __init__(self):
        self.total = 0

    def add(self, n: int) -> None:
        self.total += n


def _band_block_kernel(X: np.ndarray, block: tuple[int, ...], qi: int, params: DepthParams):
    """Band depth of curve qi against one block; returns (value, evaluations)."""
    from .bands import _query_counts

    members = np.fromiter(block, dtype=np.intp, count=len(block))
    own = qi in block
    exclude = int(np.flatnonzero(members == qi)[0]) if own else None
    size = len(block) if own else len(block) + 1
    if size < params.J + 1:
        raise ValueError(
            f"block of {len(block)} curves is too small for band depth with J={params.J} "
            f"(needs at least {params.J + 1} curves including the query)"
        )
    Xb = X[members]
    q = X[qi]
    T = X.shape[1]
    tol = params.band_tol()
    value = 0.0
    evals = 0
    for j in range(2, params.J + 1):
        count, enum = _query_counts(Xb, q, j, params.relax, tol, exclude)
        value += count / (comb(size, j) * (T if params.relax else 1))
        evals += enum
    return value, evals


def _mv_block_kernel(X: np.ndarray, block: tuple[int, ...], qi: int, params: DepthParams):
    """Simplicial band depth of curve qi against one block."""
    from .multivariate import _mv_query_counts

    members = np.fromiter(block, dtype=np.intp, count=len(block))
    own = qi in block
    exclude = int(np.flatnonzero(members == qi)[0]) if own else None
    size = len(block) if own else len(block) + 1
    n, T, d = X.shape
    if size < d + 2:
        raise ValueError(
            f"block of {len(block)} curves is too small for simplicial band depth in "
            f"dimension {d} (needs at least {d + 2} curves including the query)"
        )
    count, enum = _mv_query_counts(X[members], X[qi], params.relax, params.simplex_tol(), exclude)
    return count / (comb(size, d + 1) * (T if params.relax else 1)), enum


def _cloud_block_kernel(P: np.ndarray, block: tuple[int, ...], qi: int, params: DepthParams):
    """Simplicial depth of point qi against one block."""
    from .pointcloud import _simplex_query_count

    members = np.fromiter(block, dtype=np.intp, count=len(block))
    own = qi in block
    exclude = tuple(np.flatnonzero(members == qi)) if own else ()
    size = len(block) if own else len(block) + 1
    d = P.shape[1]
    if size < d + 2:
        raise ValueError(
            f"block of {len(block)} points is too small for simplicial depth in "
            f"dimension {d} (needs at least {d + 2} points including the query)"
        )
    count, enum = _simplex_query_count(P[members], P[qi], params.simplex_tol(), exclude)
    return count / comb(size, d + 1), enum


def _default_kernel(sample) -> Callable:
    if isinstance(sample, PointCloud):
        return _cloud_block_kernel
    if isinstance(sample, FunctionalSample):
        return _mv_block_kernel if sample.is_multivariate else _band_block_kernel
    raise TypeError(f"expected a FunctionalSample or PointCloud, got {type(sample).__name__}")


def _data_and_ids(sample) -> tuple[np.ndarray, tuple[str, ...]]:
    if isinstance(sample, PointCloud):
        return sample.array, sample.ids
    return sample.matrix, sample.ids


def _resolve_index(sample, item) -> int:
    ids = sample.ids
    if isinstance(item, int):
        if not 0 <= item < len(ids):
            raise IndexError(f"item index {item} out of range for {len(ids)} items")
        return item
    return sample.index_of(str(item))


def resampled_depth(
    item,
    sample,
    K: int,
    params: DepthParams,
    depth_kernel: Callable | None = None,
    counter: EvaluationCounter | None = None,
) -> float:
    """Block-resampled depth of one sample member (by id or index).

    ``depth_kernel(data, block, query_index, params) -> (value, evals)``
    defaults to the kernel matching the sample's type. The K per-block
    depths are averaged in fixed block order.
    """
    data, ids = _data_and_ids(sample)
    qi = _resolve_index(sample, item)
    kernel = depth_kernel or _default_kernel(sample)
    seed = 0 if params.seed is None else params.seed
    part = partition(tuple(range(len(ids))), K, item_seed(seed, ids[qi]))
    total = 0.0
    for block in part.blocks:
        value, evals = kernel(data, block, qi, params)
        if counter is not None:
            counter.add(evals)
        total += value
    return total / K


def _resampled_all(sample, params: DepthParams, method: str, threads: int) -> DepthResult:
    data, ids = _data_and_ids(sample)
    n = len(ids)
    K = params.K
    if K is None:
        raise ValueError("params.K must be set for resampled depth")
    if K > n:
        raise ValueError(f"K={K} exceeds the feasible maximum for {n} items")
    seed = 0 if params.seed is None else params.seed
    echo = replace(params, seed=seed)
    kernel = _default_kernel(sample)

    def one(i: int) -> tuple[float, int]:
        part = partition(tuple(range(n)), K, item_seed(seed, ids[i]))
        total = 0.0
        evals = 0
        for block in part.blocks:
            value, e = kernel(data, block, i, echo)
            total += value
            evals += e
        return total / K, evals

    # Per-block subset counts are uniform up to the remainder, so the
    # total workload is known up front for the progress meter.
    base, extra = divmod(n, K)
    probe_sizes = [base + 1] * extra + [base] * (K - extra)
    est = n * sum(comb(b, 2) for b in probe_sizes)
    meter = ProgressMeter(total=est, quiet=params.quiet, label=f"resampled {method}")

    depths = []
    if threads > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for value, evals in pool.map(one, range(n)):
                depths.append(value)
                meter.advance(evals)
    else:
        for i in range(n):
            value, evals = one(i)
            depths.append(value)
            meter.advance(evals)
    return DepthResult(zip(ids, depths), echo, method)


def resampled_band_depth(sample: FunctionalSample, params: DepthParams, threads: int = 1) -> DepthResult:
    """Resampled band depth of every curve of a univariate sample."""
    method = "modified_band_depth" if params.relax else "band_depth"
    return _resampled_all(sample, params, method, threads)


def resampled_simplicial_band_depth(
    sample: FunctionalSample, params: DepthParams, threads: int = 1
) -> DepthResult:
    """Resampled simplicial band depth of every curve."""
    method = "modified_simplicial_band_depth" if params.relax else "simplicial_band_depth"
    return _resampled_all(sample, params, method, threads)


def resampled_simplicial_depth(cloud: PointCloud, params: DepthParams, threads: int = 1) -> DepthResult:
    """Resampled simplicial depth of every cloud member."""
    return _resampled_all(cloud, params, "simplicial_depth", threads)
