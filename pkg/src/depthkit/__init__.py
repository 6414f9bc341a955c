"""depthkit: statistical depth for functional data and point clouds.

Band depth and modified band depth for univariate curves (Lopez-Pintado
& Romo 2009), the simplicial depth family for point clouds and
multivariate curves, depth-based L-statistics, P1/P2 homogeneity
coefficients (Flores, Lillo & Romo 2018), a seeded block-resampling
approximation for large samples, and static SVG reports.

The functional API lives in the submodules; scikit-learn style
estimators in ``depthkit.estimators``; the CLI under ``depthkit.cli``
(``python -m depthkit`` or the ``depthkit`` script).
"""

__version__ = "0.1.0"

from .bands import Envelope, band_depth, band_depth_of, containment_fraction, contains, envelope
from .depths import default_containment, functional_depth, functional_depth_of
from .estimators import BandDepth, PointDepth, SimplicialBandDepth
from .homogeneity import (
    HomogeneityReport,
    deepest_in,
    depth_wrt,
    homogeneity,
    homogeneity_matrix,
    p1,
    p2,
)
from .lstats import (
    central_region,
    deepest,
    drop_outlying_data,
    get_deepest_data,
    ordered,
    outlying,
)
from .model import (
    Curve,
    DepthParams,
    DepthResult,
    FunctionalSample,
    MultivariateCurve,
    PointCloud,
    TimeGrid,
    ValidationReport,
    functional_sample_from_array,
    point_cloud_from_array,
    validate_functional,
    validate_pointcloud,
)
from .multivariate import simplicial_band_depth, simplicial_band_depth_of
from .pointcloud import (
    l1_depth,
    mahalanobis_depth,
    oja_depth,
    pointcloud_depth,
    pointcloud_depth_of,
    simplicial_depth,
    simplicial_depth_of,
)
from .resampling import BlockPartition, EvaluationCounter, partition, resampled_depth

__all__ = [
    "__version__",
    "Envelope", "band_depth", "band_depth_of", "containment_fraction", "contains", "envelope",
    "default_containment", "functional_depth", "functional_depth_of",
    "BandDepth", "PointDepth", "SimplicialBandDepth",
    "HomogeneityReport", "deepest_in", "depth_wrt", "homogeneity", "homogeneity_matrix", "p1", "p2",
    "central_region", "deepest", "drop_outlying_data", "get_deepest_data", "ordered", "outlying",
    "Curve", "DepthParams", "DepthResult", "FunctionalSample", "MultivariateCurve", "PointCloud",
    "TimeGrid", "ValidationReport", "functional_sample_from_array", "point_cloud_from_array",
    "validate_functional", "validate_pointcloud",
    "simplicial_band_depth", "simplicial_band_depth_of",
    "l1_depth", "mahalanobis_depth", "oja_depth", "pointcloud_depth", "pointcloud_depth_of",
    "simplicial_depth", "simplicial_depth_of",
    "BlockPartition", "EvaluationCounter", "partition", "resampled_depth",
]
