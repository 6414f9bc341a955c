"""Homogeneity of two functional samples through the depthkit core."""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import pandas as pd

from . import _backend

__all__ = ["FunctionalHomogeneity"]


def _one_frame(value, name: str) -> pd.DataFrame:
    if isinstance(value, (list, tuple)) and len(value) == 1 \
            and isinstance(value[0], pd.DataFrame):
        return value[0]
    raise ValueError(
        f"{name} must be a one-frame list [DataFrame] with columns as curves; "
        "multivariate homogeneity is not exposed through this interface"
    )


def FunctionalHomogeneity(F, G, method: str = "p1", J: int = 2, K=None,
                          relax: bool = False, quiet: bool = False,
                          deep_check: bool = False, seed=None) -> float:
    """Homogeneity coefficient of sample G with respect to sample F.

    method 'p1' is the depth of G's deepest curve within F; 'p2' is its
    absolute difference from F's own baseline, so identical samples give
    exactly 0.0. Other coefficients are not provided; asking for one
    raises with the core's message listing the valid choices. The value
    returned is the core's, untouched.
    """
    f_frame = _one_frame(F, "F")
    g_frame = _one_frame(G, "G")
    with tempfile.TemporaryDirectory() as td:
        root = Path(td)
        f_path = root / "f.csv"
        g_path = root / "g.csv"
        _backend.write_univariate(f_frame, f_path)
        _backend.write_univariate(g_frame, g_path)
        argv = ["homogeneity", "--f", str(f_path), "--g", str(g_path),
                "--method", str(method), "--J", str(J)]
        if K is not None:
            argv += ["--K", str(K)]
        if relax:
            argv.append("--relax")
        if deep_check:
            argv.append("--deep-check")
        if seed is not None:
            argv += ["--seed", str(seed)]
        if quiet:
            argv.append("--quiet")
        out = root / "result.json"
        argv += ["--out", str(out), "--format", "json"]
        _backend.run(argv, forward_stderr=not quiet)
        doc = json.loads(out.read_text())
    return float(doc["value"])
