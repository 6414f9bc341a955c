"""Deterministic chunked execution for subset enumeration.

Depth kernels accumulate integer counts over lexicographically ordered
subset chunks. Integer sums are exact, and chunk results are consumed in
submission order, so totals are bit-identical for any thread count.
"""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

# Combinations per work unit. Fixed (never derived from thread count) so the
# chunk boundaries, and therefore every partial sum, are stable.
CHUNK = 512

# Below this many enumerated subsets, progress reporting stays silent.
PROGRESS_MIN = 50_000


class ProgressMeter:
    """Quarter-milestone progress lines on stderr for large enumerations.

    Silent when quiet or when the total work falls under PROGRESS_MIN.
    Progress never touches stdout, so payload output stays byte-stable.
    """

    def __init__(self, total: int, quiet: bool, label: str):
        self.total = total
        self.label = label
        self.active = (not quiet) and total >= PROGRESS_MIN
        self.done = 0
        self._next = 0.25

    def advance(self, units: int) -> None:
        self.done += units
        if not self.active or self.total <= 0:
            return
        while self._next <= 1.0 and self.done >= self._next * self.total:
            pct = int(round(self._next * 100))
            print(f"{self.label}: {pct}% ({self.done}/{self.total} subsets)", file=sys.stderr)
            self._next += 0.25


def map_chunks(
    worker: Callable,
    chunks: Sequence,
    threads: int = 1,
    quiet: bool = True,
    label: str = "depth",
    total_units: int = 0,
) -> list:
    """Apply ``worker`` to every chunk, returning results in chunk order."""
    meter = ProgressMeter(total_units, quiet, label)
    results = []
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk, res in zip(chunks, pool.map(worker, chunks)):
                results.append(res)
                meter.advance(len(chunk))
    else:
        for chunk in chunks:
            results.append(worker(chunk))
            meter.advance(len(chunk))
    return results


def chunked(seq, size: int = CHUNK) -> list:
    """Split a sequence (or array) into fixed-size runs, preserving order."""
    return [seq[i: i + size] for i in range(0, len(seq), size)]
