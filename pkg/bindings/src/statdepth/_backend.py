"""Subprocess plumbing between the wrapper and the depthkit CLI.

Every number the wrapper hands back was computed by ``python -m
depthkit`` and crossed this boundary as CSV in and JSON out; the wrapper
itself owns no math. Errors come back as the CLI's single-line JSON on
stderr and are re-raised as ValueError with the CLI's message text.
"""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path
from typing import Sequence

import pandas as pd

__all__ = ["run", "write_univariate", "write_multivariate", "write_cloud", "series"]


def _error_message(stderr: str) -> str:
    # progress lines may precede the error; the error is the last line
    lines = [ln for ln in stderr.strip().splitlines() if ln.strip()]
    if lines:
        try:
            doc = json.loads(lines[-1])
            return str(doc["error"]["message"])
        except (json.JSONDecodeError, KeyError, TypeError):
            pass
    return stderr.strip() or "depthkit call failed with no error output"


def run(argv: Sequence[str], forward_stderr: bool = False) -> None:
    """Run one depthkit command to completion.

    Raises ValueError carrying the CLI's own message on any nonzero
    exit. With forward_stderr the core's progress output is replayed to
    this process's stderr after the call finishes.
    """
    proc = subprocess.run(
        [sys.executable, "-m", "depthkit", *argv],
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        raise ValueError(_error_message(proc.stderr))
    if forward_stderr and proc.stderr:
        sys.stderr.write(proc.stderr)


def write_univariate(frame: pd.DataFrame, path: Path) -> None:
    """One frame, columns are curves; the frame index rides along as the grid."""
    # NaN must survive the trip so the core's deep check can report it
    frame.to_csv(path, index_label="index", na_rep="nan")


def write_multivariate(frames: Sequence[pd.DataFrame], directory: Path) -> list[str]:
    """One CSV per curve; zero-padded positional stems keep id order stable."""
    width = len(str(len(frames) - 1))
    labels = [str(i).zfill(width) for i in range(len(frames))]
    for label, frame in zip(labels, frames):
        frame.to_csv(directory / f"{label}.csv", index_label="index", na_rep="nan")
    return labels


def write_cloud(frame: pd.DataFrame, path: Path) -> None:
    """Rows are points; the frame index becomes the point labels."""
    frame.to_csv(path, index_label="id", na_rep="nan")


def series(entries: list[dict]) -> pd.Series:
    """CLI result entries, order preserved, full-precision depths."""
    return pd.Series(
        [e["depth"] for e in entries],
        index=[e["id"] for e in entries],
        dtype=float,
    )
