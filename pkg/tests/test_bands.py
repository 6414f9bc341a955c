import math

import numpy as np
import pytest

from depthkit import DepthParams, band_depth, band_depth_of, envelope, ordered
from depthkit.bands import band_depth_term, containment_fraction, contains
from depthkit.model import Curve, functional_sample_from_array

from conftest import GOLDEN_DISPLAY
from oracles import band_depth_naive


def sample_of(rows, ids=None):
    return functional_sample_from_array(np.asarray(rows, dtype=float), ids=ids)


class TestEnvelope:
    def test_two_constant_curves(self):
        s = sample_of([[1, 1], [3, 3]])
        env = envelope(s, [0, 1])
        assert list(env.lower) == [1, 1]
        assert list(env.upper) == [3, 3]

    def test_single_index_degenerate(self):
        s = sample_of([[1, 2], [3, 4]])
        env = envelope(s, [1])
        assert list(env.lower) == list(env.upper) == [3, 4]

    def test_golden_f0_f4(self, golden6):
        env = envelope(golden6, [0, 4])
        assert list(env.lower) == [1, 2, 3, 2, 1]
        assert list(env.upper) == [9, 9, 12, 11, 11]

    def test_bad_indices(self, golden6):
        with pytest.raises(ValueError):
            envelope(golden6, [])
        with pytest.raises(ValueError):
            envelope(golden6, [0, 0])
        with pytest.raises(IndexError):
            envelope(golden6, [0, 99])


class TestContains:
    def test_f3_in_f0_f4_band(self, golden6):
        env = envelope(golden6, [0, 4])
        assert contains(env, golden6.curves[3].values)

    def test_f3_not_in_f4_f5_band(self, golden6):
        env = envelope(golden6, [4, 5])
        assert not contains(env, golden6.curves[3].values)

    def test_curve_inside_its_own_band(self, golden6):
        env = envelope(golden6, [0, 2, 3])
        assert contains(env, golden6.curves[2].values)

    def test_length_mismatch(self, golden6):
        env = envelope(golden6, [0, 1])
        with pytest.raises(ValueError):
            contains(env, np.array([1.0, 2.0]))

    def test_tol_widens_bounds(self):
        s = sample_of([[0, 0], [1, 1]])
        env = envelope(s, [0, 1])
        just_above = np.array([1.0 + 1e-6, 0.5])
        assert not contains(env, just_above)
        assert contains(env, just_above, tol=1e-5)


class TestContainmentFraction:
    def test_fully_inside(self, golden6):
        env = envelope(golden6, [0, 4])
        assert containment_fraction(env, golden6.curves[3].values) == 1.0

    def test_fully_escaping(self, golden6):
        env = envelope(golden6, [0, 4])
        assert containment_fraction(env, golden6.curves[3].values + 100) == 0.0

    def test_half_inside(self):
        s = sample_of([[0, 0], [1, 3]])
        env = envelope(s, [0, 1])
        assert containment_fraction(env, np.array([2.0, 1.0])) == 0.5


class TestBandDepth:
    def test_golden_sample(self, golden6_result):
        got = {i: f"{d:.6f}" for i, d in golden6_result.entries}
        assert got == GOLDEN_DISPLAY
        # descending depth with ascending-id tie order
        assert [i for i, _ in ordered(golden6_result)] == ["f_3", "f_5", "f_1", "f_2", "f_0", "f_4"]

    def test_three_constants(self):
        s = sample_of([[0, 0], [1, 1], [2, 2]])
        r = band_depth(s, DepthParams(J=2))
        assert tuple(r.depths) == (0.0, pytest.approx(1 / 3), 0.0)

    def test_mbd_toy(self):
        s = sample_of([[0, 0], [1, 3], [2, 1]], ids=list("abc"))
        r = band_depth(s, DepthParams(J=2, relax=True))
        assert r.depth_of("a") == 0.0
        assert r.depth_of("b") == pytest.approx(1 / 6, abs=1e-15)
        assert r.depth_of("c") == pytest.approx(1 / 6, abs=1e-15)

    def test_too_few_curves(self):
        s = sample_of([[0, 0], [1, 1], [2, 2]])
        with pytest.raises(ValueError):
            band_depth(s, DepthParams(J=3))

    def test_multivariate_rejected(self):
        s = functional_sample_from_array(np.zeros((4, 3, 2)))
        with pytest.raises(ValueError):
            band_depth(s, DepthParams(J=2))

    def test_wrong_containment_rejected(self, golden6):
        with pytest.raises(ValueError):
            band_depth(golden6, DepthParams(containment="simplex"))

    def test_matches_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            J = int(rng.integers(2, 4))
            n = int(rng.integers(J + 1, 9))
            T = int(rng.integers(1, 11))
            X = rng.normal(size=(n, T))
            s = functional_sample_from_array(X)
            for relax in (False, True):
                got = band_depth(s, DepthParams(J=J, relax=relax)).depths
                want = [band_depth_naive(X, i, J=J, relax=relax) for i in range(n)]
                assert np.allclose(got, want, atol=1e-12, rtol=0)

    def test_per_j_terms_bounded_and_sum(self, golden6):
        for relax in (False, True):
            terms = [band_depth_term(golden6, j, relax, 0.0) for j in (2, 3)]
            for t in terms:
                assert np.all(t >= 0) and np.all(t <= 1)
            total = band_depth(golden6, DepthParams(J=3, relax=relax)).depths
            assert np.allclose(np.add(*terms), total, atol=1e-15)
            assert np.all(np.asarray(total) <= 2.0)

    def test_dominance_relax_ge_strict(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            s = functional_sample_from_array(rng.normal(size=(6, 5)))
            strict = band_depth(s, DepthParams(J=2)).depths
            relax = band_depth(s, DepthParams(J=2, relax=True)).depths
            assert np.all(np.asarray(relax) >= np.asarray(strict) - 1e-15)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(41)
        X = rng.normal(size=(6, 4))
        s = functional_sample_from_array(X)
        scale = rng.uniform(0.5, 2.0, size=4)
        shift = rng.normal(size=4)
        Y = X**3 * scale + shift  # strictly increasing per grid point
        t = functional_sample_from_array(Y)
        for relax in (False, True):
            a = band_depth(s, DepthParams(J=2, relax=relax)).depths
            b = band_depth(t, DepthParams(J=2, relax=relax)).depths
            assert np.array_equal(a, b)

    def test_permutation_equivariance(self, golden6):
        perm = [3, 0, 5, 1, 4, 2]
        shuffled = functional_sample_from_array(
            golden6.matrix[perm], ids=[golden6.ids[i] for i in perm])
        base = dict(band_depth(golden6, DepthParams(J=2)).entries)
        moved = dict(band_depth(shuffled, DepthParams(J=2)).entries)
        assert base == moved

    def test_single_point_grid_median(self):
        values = [[4.0], [1.0], [3.0], [9.0], [2.0]]
        s = sample_of(values)
        r = band_depth(s, DepthParams(J=2))
        deepest_id = max(r.entries, key=lambda e: e[1])[0]
        assert s.curves[int(deepest_id)].values[0] == np.median(np.ravel(values))

    def test_duplicate_copy_never_decreases_count(self):
        rng = np.random.default_rng(51)
        X = rng.normal(size=(5, 3))
        s = functional_sample_from_array(X)
        grown = s.with_curve(Curve("copy", X[2]))
        before = band_depth(s, DepthParams(J=2)).depths[2] * math.comb(5, 2)
        after = band_depth(grown, DepthParams(J=2)).depths[2] * math.comb(6, 2)
        assert after >= before - 1e-9

    def test_thread_counts_bit_identical(self, golden6):
        rng = np.random.default_rng(61)
        s = functional_sample_from_array(rng.normal(size=(12, 6)))
        a = band_depth(s, DepthParams(J=3, relax=True), threads=1).depths
        b = band_depth(s, DepthParams(J=3, relax=True), threads=4).depths
        assert np.array_equal(a, b)


class TestBandDepthOf:
    def test_append_semantics_match_oracle(self, golden6):
        # query joins the sample: numerator over subsets of the original
        # curves, denominator C(n+1, j)
        q = Curve("q", [2.0, 3.0, 4.0, 3.0, 2.0])
        got = band_depth_of(golden6, q, DepthParams(J=2))
        X = np.vstack([golden6.matrix, q.values[None, :]])
        want = band_depth_naive(X, 6, J=2)
        assert got == pytest.approx(want, abs=1e-12)

    def test_far_query_scores_zero(self, golden6):
        q = Curve("q", [1e6] * 5)
        assert band_depth_of(golden6, q, DepthParams(J=2)) == 0.0
