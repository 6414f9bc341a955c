"""Acceptance battery.

Each test covers one release criterion and prints a single
"ACCEPTANCE <name>: PASS/FAIL" line on the terminal, bypassing pytest's
capture so the verdicts are visible in plain runs.
"""

import subprocess
import sys
import time
from contextlib import contextmanager
from math import ceil, comb

import numpy as np
import pytest
from scipy.stats import spearmanr

from depthkit.bands import band_depth, band_depth_term
from depthkit.homogeneity import homogeneity_matrix, p2
from depthkit.lstats import ordered
from depthkit.model import (
    DepthParams,
    functional_sample_from_array,
    point_cloud_from_array,
)
from depthkit.multivariate import simplicial_band_depth
from depthkit.pointcloud import simplicial_depth
from depthkit.resampling import EvaluationCounter, resampled_depth

from conftest import GOLDEN_DISPLAY, GOLDEN_IDS, GOLDEN_VALUES
from oracles import band_depth_naive, simplicial_band_depth_naive, simplicial_depth_naive


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(name):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"ACCEPTANCE {name}: FAIL")
            raise
        with capsys.disabled():
            print(f"ACCEPTANCE {name}: PASS")

    return run


def golden_sample():
    return functional_sample_from_array(np.array(GOLDEN_VALUES, dtype=float), ids=GOLDEN_IDS)


def random_sample(rng, n, T):
    return functional_sample_from_array(rng.normal(size=(n, T)))


class TestGoldenReproduction:
    def test_golden_sample_reproduction(self, criterion):
        with criterion("golden sample band depth"):
            sample = golden_sample()
            start = time.perf_counter()
            result = band_depth(sample, DepthParams(J=2, relax=False))
            elapsed = time.perf_counter() - start

            stated = {
                "f_3": 0.400000, "f_5": 0.266667, "f_2": 0.200000,
                "f_1": 0.200000, "f_4": 0.000000, "f_0": 0.000000,
            }
            for cid, target in stated.items():
                value = result.depth_of(cid)
                assert abs(value - target) < 5e-7
                assert f"{value:.6f}" == GOLDEN_DISPLAY[cid]
            ranked = ordered(result)
            assert [i for i, _ in ranked] == ["f_3", "f_5", "f_1", "f_2", "f_0", "f_4"]
            assert elapsed < 1.0


class TestOracleEquivalence:
    def test_univariate_band_depths(self, criterion):
        with criterion("oracle equivalence: 200 univariate samples"):
            rng = np.random.default_rng(101)
            for _ in range(200):
                J = int(rng.integers(2, 4))
                n = int(rng.integers(J + 1, 9))
                T = int(rng.integers(2, 11))
                X = rng.normal(size=(n, T))
                sample = functional_sample_from_array(X)
                for relax in (False, True):
                    got = band_depth(sample, DepthParams(J=J, relax=relax)).depths
                    want = [band_depth_naive(X, i, J=J, relax=relax) for i in range(n)]
                    assert np.max(np.abs(got - np.array(want))) <= 1e-12

    def test_pointcloud_simplicial(self, criterion):
        with criterion("oracle equivalence: 100 point clouds"):
            rng = np.random.default_rng(102)
            for _ in range(100):
                d = int(rng.integers(1, 4))
                m = int(rng.integers(d + 2, 9))
                P = rng.normal(size=(m, d))
                cloud = point_cloud_from_array(P)
                got = simplicial_depth(cloud, DepthParams(containment="simplex")).depths
                want = np.array([simplicial_depth_naive(P, i) for i in range(m)])
                assert np.array_equal(got, want)

    def test_multivariate_band_depths(self, criterion):
        with criterion("oracle equivalence: 50 multivariate samples"):
            rng = np.random.default_rng(103)
            for _ in range(50):
                n = int(rng.integers(4, 7))
                T = int(rng.integers(1, 4))
                X = rng.normal(size=(n, T, 2))
                sample = functional_sample_from_array(X)
                for relax in (False, True):
                    params = DepthParams(containment="simplex", relax=relax)
                    got = simplicial_band_depth(sample, params).depths
                    want = [simplicial_band_depth_naive(X, i, relax=relax) for i in range(n)]
                    assert np.max(np.abs(got - np.array(want))) <= 1e-12


class TestDominanceAndBounds:
    def test_band_depth_properties(self, criterion):
        with criterion("dominance and bounds: 500 univariate trials"):
            rng = np.random.default_rng(104)
            for _ in range(500):
                J = int(rng.integers(2, 4))
                n = int(rng.integers(J + 1, 8))
                T = int(rng.integers(2, 7))
                sample = random_sample(rng, n, T)
                strict = band_depth(sample, DepthParams(J=J, relax=False)).depths
                relaxed = band_depth(sample, DepthParams(J=J, relax=True)).depths
                assert np.all(relaxed >= strict)
                assert np.all(strict >= 0.0) and np.all(strict <= J - 1)
                assert np.all(relaxed >= 0.0) and np.all(relaxed <= J - 1)
                for j in range(2, J + 1):
                    for relax in (False, True):
                        term = band_depth_term(sample, j, relax=relax)
                        assert np.all(term >= 0.0) and np.all(term <= 1.0)

    def test_simplicial_band_dominance(self, criterion):
        with criterion("dominance and bounds: 500 multivariate trials"):
            rng = np.random.default_rng(105)
            for _ in range(500):
                n = int(rng.integers(4, 6))
                T = int(rng.integers(1, 4))
                sample = functional_sample_from_array(rng.normal(size=(n, T, 2)))
                strict = simplicial_band_depth(sample, DepthParams(containment="simplex")).depths
                relaxed = simplicial_band_depth(
                    sample, DepthParams(containment="simplex", relax=True)).depths
                assert np.all(relaxed >= strict)
                assert np.all(strict >= 0.0) and np.all(strict <= 1.0)
                assert np.all(relaxed >= 0.0) and np.all(relaxed <= 1.0)


class TestInvariance:
    def test_monotone_transforms(self, criterion):
        with criterion("invariance: 100 per-time monotone transforms"):
            rng = np.random.default_rng(106)
            for _ in range(100):
                n = int(rng.integers(3, 8))
                T = int(rng.integers(2, 7))
                X = rng.normal(size=(n, T))
                a = rng.uniform(0.5, 2.0, size=T)
                b = rng.uniform(0.1, 1.0, size=T)
                c = rng.normal(size=T)
                Y = a * X**3 + b * X + c  # strictly increasing per time
                for relax in (False, True):
                    params = DepthParams(J=2, relax=relax)
                    before = band_depth(functional_sample_from_array(X), params).depths
                    after = band_depth(functional_sample_from_array(Y), params).depths
                    assert np.array_equal(before, after)

    def test_affine_maps(self, criterion):
        with criterion("invariance: 100 affine maps of clouds"):
            rng = np.random.default_rng(107)
            for _ in range(100):
                d = int(rng.integers(2, 4))
                m = int(rng.integers(d + 2, 9))
                P = rng.normal(size=(m, d))
                Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
                A = Q @ np.diag(rng.uniform(0.5, 2.0, size=d))
                shift = rng.normal(size=d)
                params = DepthParams(containment="simplex")
                before = simplicial_depth(point_cloud_from_array(P), params).depths
                after = simplicial_depth(point_cloud_from_array(P @ A.T + shift), params).depths
                assert np.array_equal(before, after)


def smooth_family(rng, n=40, T=20):
    """Seed curve from Unif(0, 1], scaled copies f_i = x_i * f_0."""
    f0 = 1.0 - rng.random(T)
    rows = [f0] + [rng.random() * f0 for _ in range(n - 1)]
    return functional_sample_from_array(np.vstack(rows))


class TestResampling:
    def test_k1_matches_exact(self, criterion):
        with criterion("resampling: K=1 equals exact"):
            sample = golden_sample()
            for relax in (False, True):
                exact = band_depth(sample, DepthParams(J=2, relax=relax)).depths
                approx = band_depth(sample, DepthParams(J=2, relax=relax, K=1, seed=9)).depths
                assert np.max(np.abs(exact - approx)) <= 1e-12
            cloud = point_cloud_from_array([[0.0, 0], [4, 0], [0, 4], [1, 1]])
            exact = simplicial_depth(cloud, DepthParams(containment="simplex")).depths
            approx = simplicial_depth(
                cloud, DepthParams(containment="simplex", K=1, seed=9)).depths
            assert np.max(np.abs(exact - approx)) <= 1e-12

    def test_rank_correlation_over_ten_seeds(self, criterion):
        with criterion("resampling: mean Spearman >= 0.7 (n=40, K=4)"):
            rng = np.random.default_rng(2026)
            sample = smooth_family(rng)
            exact = band_depth(sample, DepthParams(J=2)).depths
            rhos = []
            for seed in range(10):
                approx = band_depth(sample, DepthParams(J=2, K=4, seed=seed)).depths
                rhos.append(spearmanr(exact, approx)[0])
            assert np.mean(rhos) >= 0.7

    def test_evaluation_count(self, criterion):
        with criterion("resampling: per-curve cost K*C(n/K,2) < C(n-1,2)"):
            rng = np.random.default_rng(2027)
            sample = smooth_family(rng)
            n, K = 40, 4
            budget = K * comb(ceil(n / K), 2)
            for cid in sample.ids:
                counter = EvaluationCounter()
                resampled_depth(cid, sample, K=K, params=DepthParams(J=2, seed=3), counter=counter)
                assert counter.total == budget
                assert counter.total < comb(n - 1, 2)


class TestHomogeneity:
    def test_self_comparison_and_matrix(self, criterion):
        with criterion("homogeneity: P2(F,F)=0, zero diagonal, offset maximal"):
            rng = np.random.default_rng(108)
            params = DepthParams(J=2)
            for _ in range(20):
                F = random_sample(rng, int(rng.integers(4, 9)), int(rng.integers(3, 7)))
                assert p2(F, F, params).value == 0.0

            groups = [random_sample(rng, 7, 5) for _ in range(3)]
            M = homogeneity_matrix(groups, "p2", params)
            assert np.all(np.diag(M) == 0.0)

            a = random_sample(rng, 8, 6)
            b = random_sample(rng, 8, 6)
            c = functional_sample_from_array(a.matrix + 50.0)
            M = homogeneity_matrix([a, b, c], "p2", DepthParams(J=2, relax=True))
            offset_cells = [M[0, 2], M[1, 2], M[2, 0], M[2, 1]]
            within_cells = [M[0, 1], M[1, 0]]
            assert min(offset_cells) > max(within_cells)


class TestPerformance:
    def test_exact_band_depth_scale(self, criterion):
        with criterion("performance: n=100, grid 50 under 5 s + thread parity"):
            rng = np.random.default_rng(109)
            sample = random_sample(rng, 100, 50)
            params = DepthParams(J=2)
            start = time.perf_counter()
            single = band_depth(sample, params, threads=1)
            elapsed = time.perf_counter() - start
            assert elapsed < 5.0
            multi = band_depth(sample, params, threads=4)
            assert np.array_equal(single.depths, multi.depths)


class TestCliDeterminism:
    def run(self, *argv):
        proc = subprocess.run([sys.executable, "-m", "depthkit", *argv], capture_output=True)
        assert proc.returncode == 0, proc.stderr.decode()
        return proc.stdout

    def test_byte_identical_invocations(self, criterion, golden6_csv, cloud_csv, tmp_path):
        with criterion("determinism: CLI byte-identical across runs and threads"):
            result_file = tmp_path / "golden.json"
            self.run("functional", "--input", str(golden6_csv), "--quiet",
                     "--out", str(result_file))
            batteries = [
                ("functional", "--input", str(golden6_csv), "--quiet", "--K", "2", "--seed", "7"),
                ("functional", "--input", str(golden6_csv), "--quiet", "--relax"),
                ("pointcloud", "--input", str(cloud_csv), "--quiet"),
                ("stats", "--depths", str(result_file), "ordered"),
                ("homogeneity", "--f", str(golden6_csv), "--g", str(golden6_csv),
                 "--method", "p2", "--quiet"),
                ("matrix", "--groups", str(golden6_csv), str(golden6_csv), "--quiet"),
            ]
            for argv in batteries:
                first = self.run(*argv)
                second = self.run(*argv)
                assert first == second, argv
                one = self.run(*argv, "--threads", "1")
                eight = self.run(*argv, "--threads", "8")
                assert one == eight, argv
