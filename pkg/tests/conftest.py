import numpy as np
import pytest

from depthkit import DepthParams, functional_sample_from_array

# the six-curve/five-point sample used throughout (columns = curves)
GOLDEN_VALUES = np.array([
    [1, 2, 3, 2, 1],
    [2, 4, 5, 6, 2],
    [3, 4, 4, 2, 1],
    [6, 7, 6.5, 6, 7],
    [9, 9, 12, 11, 11],
    [8, 8, 10, 10, 9],
], dtype=float)

GOLDEN_IDS = tuple(f"f_{i}" for i in range(6))

GOLDEN_DISPLAY = {
    "f_3": "0.400000",
    "f_5": "0.266667",
    "f_2": "0.200000",
    "f_1": "0.200000",
    "f_4": "0.000000",
    "f_0": "0.000000",
}

GOLDEN_CSV = (
    "index,f_0,f_1,f_2,f_3,f_4,f_5\n"
    "x_0,1,2,3,6,9,8\n"
    "x_1,2,4,4,7,9,8\n"
    "x_2,3,5,4,6.5,12,10\n"
    "x_3,2,6,2,6,11,10\n"
    "x_4,1,2,1,7,11,9\n"
)

CLOUD_CSV = (
    "label,u,v\n"
    "a,0,0\n"
    "b,4,0\n"
    "c,0,4\n"
    "m,1,1\n"
)


@pytest.fixture
def golden6():
    return functional_sample_from_array(GOLDEN_VALUES, ids=GOLDEN_IDS)


@pytest.fixture
def golden6_result(golden6):
    from depthkit import band_depth
    return band_depth(golden6, DepthParams(J=2))


@pytest.fixture
def golden6_csv(tmp_path):
    path = tmp_path / "golden6.csv"
    path.write_text(GOLDEN_CSV)
    return path


@pytest.fixture
def cloud_csv(tmp_path):
    path = tmp_path / "cloud.csv"
    path.write_text(CLOUD_CSV)
    return path


def random_univariate(rng, n=None, T=None):
    n = n or int(rng.integers(3, 9))
    T = T or int(rng.integers(1, 11))
    return functional_sample_from_array(rng.normal(size=(n, T)))


def random_multivariate(rng, n=None, T=None, d=2):
    n = n or int(rng.integers(d + 2, 7))
    T = T or int(rng.integers(1, 4))
    return functional_sample_from_array(rng.normal(size=(n, T, d)))
