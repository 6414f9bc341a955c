"""Scikit-learn style estimators wrapping the depth functions.

Each estimator follows the usual contract: constructor arguments are
stored verbatim, validation happens in ``fit``, fitted state lives in
trailing-underscore attributes, and ``get_params``/``set_params`` come
from ``BaseEstimator``.

``transform`` scores new items against the fitted sample via append
semantics (the query joins the reference set for subset enumeration).
``fit_transform`` instead returns the within-sample depths of the fitted
data itself, which is why these classes do not mix in TransformerMixin:
``fit(X).transform(X)`` would re-score each row as an outside query and
give systematically different values.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .bands import band_depth, band_depth_of
from .model import (
    Curve,
    DepthParams,
    FunctionalSample,
    MultivariateCurve,
    PointCloud,
    functional_sample_from_array,
    point_cloud_from_array,
    validate_functional,
    validate_pointcloud,
)
from .multivariate import simplicial_band_depth, simplicial_band_depth_of
from .pointcloud import pointcloud_depth, pointcloud_depth_of

__all__ = ["BandDepth", "SimplicialBandDepth", "PointDepth"]


def _as_functional(X, multivariate: bool) -> FunctionalSample:
    if isinstance(X, FunctionalSample):
        sample = X
    else:
        sample = functional_sample_from_array(np.asarray(X, dtype=float))
    if sample.is_multivariate != multivariate:
        want = "multivariate (n, T, d)" if multivariate else "univariate (n, T)"
        raise ValueError(f"expected a {want} sample")
    return sample


def _as_cloud(X) -> PointCloud:
    if isinstance(X, PointCloud):
        return X
    return point_cloud_from_array(np.asarray(X, dtype=float))


def _raise_on_violations(report) -> None:
    if not report.ok:
        lines = "; ".join(f"{v.subject}: {v.detail}" for v in report.violations)
        raise ValueError(f"input failed validation: {lines}")


class BandDepth(BaseEstimator):
    """Band depth (and its modified variant) for univariate curves.

    Parameters mirror the functional API: J is the largest band order,
    relax switches to the modified depth's fraction-of-grid measure, K
    enables block resampling, tol widens band bounds.
    """

    def __init__(self, J: int = 2, relax: bool = False, K: int | None = None,
                 seed: int | None = None, tol: float | None = None,
                 threads: int = 1, quiet: bool = True, deep_check: bool = False):
        self.J = J
        self.relax = relax
        self.K = K
        self.seed = seed
        self.tol = tol
        self.threads = threads
        self.quiet = quiet
        self.deep_check = deep_check

    def _params(self) -> DepthParams:
        return DepthParams(J=self.J, K=self.K, containment="r2", relax=self.relax,
                           seed=self.seed, tol=self.tol, quiet=self.quiet)

    def fit(self, X, y=None):
        sample = _as_functional(X, multivariate=False)
        _raise_on_violations(validate_functional(sample, deep=self.deep_check))
        self.sample_ = sample
        self.result_ = band_depth(sample, self._params(), threads=self.threads)
        self.ids_ = list(self.result_.ids)
        self.depths_ = np.array(self.result_.depths)
        self.n_features_in_ = len(sample.grid)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "result_")
        queries = _as_functional(X, multivariate=False)
        if len(queries.grid) != self.n_features_in_:
            raise ValueError(
                f"query grid has {len(queries.grid)} points, fitted sample has {self.n_features_in_}")
        params = self._params()
        out = [band_depth_of(self.sample_, c, params, threads=self.threads) for c in queries.curves]
        return np.array(out).reshape(-1, 1)

    def fit_transform(self, X, y=None) -> np.ndarray:
        # within-sample depths, not transform(fit(X)); see module docstring
        return self.fit(X).depths_.reshape(-1, 1)


class SimplicialBandDepth(BaseEstimator):
    """Simplicial band depth for multivariate curves (n, T, d)."""

    def __init__(self, relax: bool = False, K: int | None = None,
                 seed: int | None = None, tol: float | None = None,
                 threads: int = 1, quiet: bool = True, deep_check: bool = False):
        self.relax = relax
        self.K = K
        self.seed = seed
        self.tol = tol
        self.threads = threads
        self.quiet = quiet
        self.deep_check = deep_check

    def _params(self) -> DepthParams:
        return DepthParams(K=self.K, containment="simplex", relax=self.relax,
                           seed=self.seed, tol=self.tol, quiet=self.quiet)

    def fit(self, X, y=None):
        sample = _as_functional(X, multivariate=True)
        _raise_on_violations(validate_functional(sample, deep=self.deep_check))
        self.sample_ = sample
        self.result_ = simplicial_band_depth(sample, self._params(), threads=self.threads)
        self.ids_ = list(self.result_.ids)
        self.depths_ = np.array(self.result_.depths)
        self.n_features_in_ = len(sample.grid) * sample.dim
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "result_")
        queries = _as_functional(X, multivariate=True)
        if len(queries.grid) != len(self.sample_.grid) or queries.dim != self.sample_.dim:
            raise ValueError("query shape does not match the fitted sample")
        params = self._params()
        out = [simplicial_band_depth_of(self.sample_, c, params, threads=self.threads)
               for c in queries.curves]
        return np.array(out).reshape(-1, 1)

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).depths_.reshape(-1, 1)


class PointDepth(BaseEstimator):
    """Depth of points in a static cloud under a chosen containment rule.

    containment is one of simplex, oja, mahalanobis, l1. K (block
    resampling) applies to the simplex rule only.
    """

    def __init__(self, containment: str = "simplex", K: int | None = None,
                 seed: int | None = None, tol: float | None = None,
                 threads: int = 1, quiet: bool = True, deep_check: bool = False):
        self.containment = containment
        self.K = K
        self.seed = seed
        self.tol = tol
        self.threads = threads
        self.quiet = quiet
        self.deep_check = deep_check

    def _params(self) -> DepthParams:
        return DepthParams(K=self.K, containment=self.containment,
                           seed=self.seed, tol=self.tol, quiet=self.quiet)

    def fit(self, X, y=None):
        cloud = _as_cloud(X)
        _raise_on_violations(validate_pointcloud(cloud, deep=self.deep_check))
        self.cloud_ = cloud
        self.result_ = pointcloud_depth(cloud, self._params(), threads=self.threads)
        self.ids_ = list(self.result_.ids)
        self.depths_ = np.array(self.result_.depths)
        self.n_features_in_ = cloud.dim
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "result_")
        queries = _as_cloud(X)
        if queries.dim != self.n_features_in_:
            raise ValueError(
                f"query points have dimension {queries.dim}, fitted cloud has {self.n_features_in_}")
        params = self._params()
        out = [pointcloud_depth_of(row, self.cloud_, params, threads=self.threads)
               for row in queries.rows]
        return np.array(out).reshape(-1, 1)

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X).depths_.reshape(-1, 1)
