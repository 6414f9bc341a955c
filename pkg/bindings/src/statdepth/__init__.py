"""statdepth: pandas-first statistical depth, powered by the depthkit core.

Three entry points: FunctionalDepth for curves (band / modified /
simplicial band depth), PointcloudDepth for point clouds, and
FunctionalHomogeneity for the p1/p2 coefficients. All numbers are
computed by the depthkit command line in a subprocess and returned as
pandas objects; this package adds no arithmetic of its own, so its
values are bit-identical to the CLI's JSON output on the same inputs
and seeds.
"""

__version__ = "0.1.0"

from .depth import FunctionalDepth, PointcloudDepth
from .homogeneity import FunctionalHomogeneity

__all__ = ["FunctionalDepth", "PointcloudDepth", "FunctionalHomogeneity", "__version__"]
