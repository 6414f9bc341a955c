"""Order statistics over a depth result: ranking, trimming, central sets.

Ordering is always descending by depth with ties broken by ascending id,
so every operation here is deterministic. Boundary ties expand the
returned set for both the deepest and the outlying directions: asking for
the single most outlying item returns two when two share the minimum.
"""

from __future__ import annotations

from math import ceil

from .model import DepthResult

__all__ = [
    "ordered",
    "deepest",
    "outlying",
    "drop_outlying_data",
    "get_deepest_data",
    "central_region",
]


def ordered(result: DepthResult) -> list[tuple[str, float]]:
    """Entries sorted by descending depth, ties by ascending id."""
    return sorted(result.entries, key=lambda e: (-e[1], e[0]))


def _take_with_ties(ranked: list[tuple[str, float]], n: int) -> list[tuple[str, float]]:
    """First n of a ranked list, expanded to include ties at the boundary."""
    if not 1 <= n <= len(ranked):
        raise ValueError(f"n must be between 1 and {len(ranked)}, got {n}")
    cut = ranked[n - 1][1]
    out = list(ranked[:n])
    for item_id, depth in ranked[n:]:
        if depth != cut:
            break
        out.append((item_id, depth))
    return out


def deepest(result: DepthResult, n: int = 1) -> list[tuple[str, float]]:
    """The n deepest entries (n=1 is the depth median); boundary ties expand."""
    return _take_with_ties(ordered(result), n)


def outlying(result: DepthResult, n: int = 1) -> list[tuple[str, float]]:
    """The n shallowest entries, ascending depth; boundary ties expand."""
    ranked = sorted(result.entries, key=lambda e: (e[1], e[0]))
    return _take_with_ties(ranked, n)


def drop_outlying_data(sample, result: DepthResult, n: int):
    """A new sample with the n most outlying items removed (ties expand)."""
    if n == 0:
        return sample
    drop = [item_id for item_id, _ in outlying(result, n)]
    remaining = len(result.entries) - len(drop)
    if remaining < 1:
        raise ValueError(f"dropping {len(drop)} outlying items would leave an empty sample")
    return sample.without(drop)


def get_deepest_data(sample, result: DepthResult, n: int):
    """A new sample holding only the n deepest items (ties expand)."""
    keep = [item_id for item_id, _ in deepest(result, n)]
    return sample.subset(keep)


def central_region(result: DepthResult, fraction: float = 0.5) -> list[str]:
    """Ids of the deepest ceil(fraction * count) items, ties expanded."""
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    n = ceil(fraction * len(result.entries))
    return [item_id for item_id, _ in deepest(result, n)]
