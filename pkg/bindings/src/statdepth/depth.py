"""Depth of functional curves and point clouds, pandas in and pandas out.

FunctionalDepth takes the usual list-of-frames convention: a single
frame means univariate data with one column per curve; several frames
mean one multivariate curve per frame (rows are time points, columns
are coordinates). PointcloudDepth takes one frame of rows-are-points.
Both delegate the actual computation to the depthkit CLI and keep the
result JSON, so selection methods (deepest, outlying, ...) are answered
by the core's own tie and ordering rules, not re-derived here.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import pandas as pd

from . import _backend

__all__ = ["FunctionalDepth", "PointcloudDepth"]


class _DepthBase:
    """Shared result surface: a ranked mapping plus core-backed selections."""

    _result_text: str
    _doc: dict
    _labels: list[str]
    _quiet: bool

    @property
    def method(self) -> str:
        """Depth notion the core chose, e.g. 'band_depth'."""
        return self._doc["method"]

    @property
    def params(self) -> dict:
        """Parameters echoed by the core, including the seed actually used."""
        return dict(self._doc["params"])

    def ordered(self) -> pd.Series:
        """All items, deepest first; ties broken by ascending label."""
        return _backend.series(self._doc["entries"])

    def _stats(self, action: str, *args: str) -> pd.Series:
        with tempfile.TemporaryDirectory() as td:
            depths = Path(td) / "depths.json"
            depths.write_text(self._result_text)
            out = Path(td) / "selection.json"
            _backend.run(
                ["stats", action, *args, "--depths", str(depths),
                 "--out", str(out), "--quiet"],
            )
            doc = json.loads(out.read_text())
        return _backend.series(doc["entries"])

    def deepest(self, n: int = 1) -> pd.Series:
        """The n deepest items; a tie at the boundary is kept whole."""
        return self._stats("deepest", str(n))

    def outlying(self, n: int = 1) -> pd.Series:
        """The n most outlying items, ties at the boundary included."""
        return self._stats("outlying", str(n))

    def median(self) -> pd.Series:
        """The deepest item (the depth-based median); more than one on a tie."""
        return self.deepest(1)

    def _keep_after_drop(self, n: int) -> list[str]:
        if n == 0:
            return list(self._labels)
        drop = set(self.outlying(n).index)
        keep = [label for label in self._labels if label not in drop]
        if not keep:
            raise ValueError(
                f"dropping {n} outlying item(s) would leave the sample empty"
            )
        return keep

    def __len__(self) -> int:
        return len(self._labels)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.method}, n={len(self)})"


class FunctionalDepth(_DepthBase):
    """Band depth of curves, computed by the depthkit core.

    data: list of DataFrames. One frame = univariate curves in columns
    (band depth, or modified band depth with relax=True). Two or more
    frames = one multivariate curve per frame, same columns and row
    count everywhere (simplicial band depth). J bounds the band order,
    K switches on the block-resampling approximation, containment picks
    the rule explicitly ('r2' or 'simplex'), deep_check asks the core to
    scan for NaN/Inf before computing. Depths are computed once, here.
    """

    def __init__(self, data, J: int = 2, K=None, containment=None,
                 relax: bool = False, quiet: bool = False,
                 deep_check: bool = False, seed=None):
        if not isinstance(data, (list, tuple)) or len(data) == 0 \
                or not all(isinstance(f, pd.DataFrame) for f in data):
            raise TypeError(
                "data must be a non-empty list of DataFrames: one frame of "
                "columns-as-curves, or one frame per multivariate curve"
            )
        self._quiet = bool(quiet)
        self._univariate = len(data) == 1
        self._frames = [f.copy() for f in data]

        with tempfile.TemporaryDirectory() as td:
            root = Path(td)
            argv = ["functional"]
            if self._univariate:
                src = root / "sample.csv"
                _backend.write_univariate(self._frames[0], src)
                argv += ["--input", str(src)]
                self._labels = [str(c) for c in self._frames[0].columns]
            else:
                curves = root / "curves"
                curves.mkdir()
                self._labels = _backend.write_multivariate(self._frames, curves)
                argv += ["--multivariate", str(curves)]
            argv += ["--J", str(J)]
            if K is not None:
                argv += ["--K", str(K)]
            if containment is not None:
                argv += ["--containment", str(containment)]
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
            self._result_text = out.read_text()
        self._doc = json.loads(self._result_text)

    def drop_outlying_data(self, n: int = 1):
        """The original data without the n most outlying curves.

        Univariate input gives back one frame, multivariate the list of
        surviving frames. n=0 returns the data unchanged; emptying the
        sample is refused.
        """
        keep = set(self._keep_after_drop(n))
        if self._univariate:
            frame = self._frames[0]
            return frame.loc[:, [c for c in frame.columns if str(c) in keep]]
        return [f for label, f in zip(self._labels, self._frames) if label in keep]

    def get_deepest_data(self, n: int = 1):
        """The n deepest curves as data, in the original column order."""
        keep = set(self.deepest(n).index)
        if self._univariate:
            frame = self._frames[0]
            return frame.loc[:, [c for c in frame.columns if str(c) in keep]]
        return [f for label, f in zip(self._labels, self._frames) if label in keep]


class PointcloudDepth(_DepthBase):
    """Depth of every point of a cloud, rows are points.

    containment picks the notion: 'simplex' (default in the core),
    'oja', 'mahalanobis' or 'l1'. Point labels come from the frame
    index.
    """

    def __init__(self, df: pd.DataFrame, containment=None,
                 quiet: bool = False, deep_check: bool = False):
        if not isinstance(df, pd.DataFrame):
            raise TypeError("df must be a DataFrame with one row per point")
        self._quiet = bool(quiet)
        self._frame = df.copy()
        self._labels = [str(i) for i in self._frame.index]

        with tempfile.TemporaryDirectory() as td:
            root = Path(td)
            src = root / "cloud.csv"
            _backend.write_cloud(self._frame, src)
            argv = ["pointcloud", "--input", str(src)]
            if containment is not None:
                argv += ["--containment", str(containment)]
            if deep_check:
                argv.append("--deep-check")
            if quiet:
                argv.append("--quiet")
            out = root / "result.json"
            argv += ["--out", str(out), "--format", "json"]
            _backend.run(argv, forward_stderr=not quiet)
            self._result_text = out.read_text()
        self._doc = json.loads(self._result_text)

    def drop_outlying_data(self, n: int = 1) -> pd.DataFrame:
        """The cloud without the n most outlying points, original row order."""
        keep = set(self._keep_after_drop(n))
        mask = [str(i) in keep for i in self._frame.index]
        return self._frame.loc[mask]

    def get_deepest_data(self, n: int = 1) -> pd.DataFrame:
        """The n deepest points as rows, in the original row order."""
        keep = set(self.deepest(n).index)
        mask = [str(i) in keep for i in self._frame.index]
        return self._frame.loc[mask]
