"""FunctionalHomogeneity against the CLI it wraps."""

import pandas as pd
import pytest

from statdepth import FunctionalHomogeneity

from conftest import cli_json


class TestCoefficients:
    def test_p2_of_identical_samples_is_zero(self, golden_frame):
        value = FunctionalHomogeneity([golden_frame], [golden_frame],
                                      method="p2", J=2, quiet=True)
        assert value == 0.0

    def test_p1_self_is_duplicate_depth(self, golden_frame):
        value = FunctionalHomogeneity([golden_frame], [golden_frame],
                                      method="p1", J=2, quiet=True)
        assert value == pytest.approx(11 / 21, abs=1e-12)

    def test_offset_group_scores_high_p2(self, golden_frame):
        far = golden_frame + 100.0
        near = FunctionalHomogeneity([golden_frame], [golden_frame], method="p2", quiet=True)
        apart = FunctionalHomogeneity([golden_frame], [far], method="p2", quiet=True)
        assert apart > near

    def test_bit_identical_to_cli(self, golden_frame, tmp_path):
        shifted = golden_frame + 1.5
        f_path = tmp_path / "f.csv"
        g_path = tmp_path / "g.csv"
        golden_frame.to_csv(f_path, index_label="index")
        shifted.to_csv(g_path, index_label="index")
        for method in ("p1", "p2"):
            doc = cli_json(tmp_path, "homogeneity", "--f", str(f_path),
                           "--g", str(g_path), "--method", method)
            value = FunctionalHomogeneity([golden_frame], [shifted],
                                          method=method, J=2, quiet=True)
            assert value == doc["value"]

    def test_k_and_seed_pass_through(self, golden_frame, tmp_path):
        f_path = tmp_path / "f.csv"
        golden_frame.to_csv(f_path, index_label="index")
        doc = cli_json(tmp_path, "homogeneity", "--f", str(f_path),
                       "--g", str(f_path), "--method", "p1",
                       "--K", "2", "--seed", "3")
        value = FunctionalHomogeneity([golden_frame], [golden_frame],
                                      method="p1", K=2, seed=3, quiet=True)
        assert value == doc["value"]


class TestErrors:
    def test_p3_is_an_explicit_unsupported_error(self, golden_frame):
        with pytest.raises(ValueError) as err:
            FunctionalHomogeneity([golden_frame], [golden_frame],
                                  method="p3", quiet=True)
        msg = str(err.value)
        assert "p3" in msg and "p1" in msg

    def test_samples_must_be_one_frame_lists(self, golden_frame):
        with pytest.raises(ValueError, match="one-frame"):
            FunctionalHomogeneity(golden_frame, [golden_frame], quiet=True)
        with pytest.raises(ValueError, match="one-frame"):
            FunctionalHomogeneity([golden_frame, golden_frame], [golden_frame], quiet=True)

    def test_grid_mismatch_surfaces_core_text(self, golden_frame):
        longer = pd.DataFrame({"a": range(7), "b": range(7), "c": range(7)},
                              dtype=float)
        with pytest.raises(ValueError, match="grid"):
            FunctionalHomogeneity([golden_frame], [longer], method="p2", quiet=True)
