"""SVG rendering: structure, shading, determinism. No pixel comparisons,
just the text the renderer actually promises."""

import re
from xml.dom import minidom

import numpy as np
import pytest

from depthkit.model import DepthParams, point_cloud_from_array
from depthkit.pointcloud import pointcloud_depth
from depthkit.render import render_curves, render_heatmap, render_scatter

from conftest import random_multivariate

RED = "#cc0000"
GRAY = "#999999"


def polyline_strokes(text):
    return re.findall(r'<polyline[^>]*stroke="([^"]+)"', text)


def circle_fills(text):
    return re.findall(r'<circle[^>]*fill="([^"]+)"', text)


def rect_fills(text):
    return [f for f in re.findall(r'<rect[^>]*fill="([^"]+)"', text) if f.startswith("rgb")]


class TestCurves:
    def test_one_red_among_gray(self, golden6, tmp_path):
        out = tmp_path / "c.svg"
        render_curves(golden6, ["f_3"], "band depth", out)
        strokes = polyline_strokes(out.read_text())
        assert len(strokes) == 6
        assert strokes.count(RED) == 1
        assert strokes.count(GRAY) == 5
        # highlights are drawn last so they sit on top
        assert strokes[-1] == RED

    def test_no_highlight_all_gray(self, golden6, tmp_path):
        out = tmp_path / "c.svg"
        render_curves(golden6, [], "", out)
        strokes = polyline_strokes(out.read_text())
        assert strokes == [GRAY] * 6

    def test_everything_highlighted(self, golden6, tmp_path):
        out = tmp_path / "c.svg"
        render_curves(golden6, list(golden6.ids), "", out)
        assert polyline_strokes(out.read_text()) == [RED] * 6

    def test_legend_names_highlights(self, golden6, tmp_path):
        out = tmp_path / "c.svg"
        render_curves(golden6, ["f_3", "f_5"], "", out)
        text = out.read_text()
        assert ">f_3</text>" in text
        assert ">f_5</text>" in text

    def test_multivariate_rejected(self, tmp_path):
        rng = np.random.default_rng(0)
        s = random_multivariate(rng, n=5, T=3, d=2)
        with pytest.raises(ValueError, match="univariate"):
            render_curves(s, [], "", tmp_path / "c.svg")

    def test_unknown_highlight_id(self, golden6, tmp_path):
        with pytest.raises(KeyError, match="f_9"):
            render_curves(golden6, ["f_9"], "", tmp_path / "c.svg")

    def test_byte_identical_reruns(self, golden6, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        render_curves(golden6, ["f_3"], "same", a)
        render_curves(golden6, ["f_3"], "same", b)
        assert a.read_bytes() == b.read_bytes()

    def test_valid_xml_with_escaped_title(self, golden6, tmp_path):
        out = tmp_path / "c.svg"
        render_curves(golden6, [], "a < b & c", out)
        doc = minidom.parse(str(out))
        assert doc.documentElement.tagName == "svg"
        assert "a &lt; b &amp; c" in out.read_text()


SQUARE = point_cloud_from_array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])


class TestScatterGradient:
    def test_deepest_is_darkest(self, tmp_path):
        out = tmp_path / "s.svg"
        render_scatter(SQUARE, [0.1, 0.1, 0.1, 0.4], path=out)
        fills = circle_fills(out.read_text())
        assert fills.count("rgb(50,50,50)") == 1
        assert fills.count("rgb(230,230,230)") == 3

    def test_equal_depths_same_shade(self, tmp_path):
        out = tmp_path / "s.svg"
        render_scatter(SQUARE, [0.25] * 4, path=out)
        assert circle_fills(out.read_text()) == ["rgb(140,140,140)"] * 4

    def test_accepts_depth_result(self, tmp_path):
        cloud = point_cloud_from_array([[0, 0], [4, 0], [0, 4], [1, 1]])
        result = pointcloud_depth(cloud, DepthParams(containment="simplex"))
        out = tmp_path / "s.svg"
        render_scatter(cloud, result, path=out)
        assert len(circle_fills(out.read_text())) == 4

    def test_three_dimensional_projection(self, tmp_path):
        rng = np.random.default_rng(1)
        cloud = point_cloud_from_array(rng.normal(size=(8, 3)))
        out = tmp_path / "s.svg"
        render_scatter(cloud, np.linspace(0, 1, 8), path=out)
        assert len(circle_fills(out.read_text())) == 8
        minidom.parse(str(out))

    def test_wrong_depth_count(self, tmp_path):
        with pytest.raises(ValueError, match="4 depth values"):
            render_scatter(SQUARE, [0.1, 0.2], path=tmp_path / "s.svg")

    def test_bad_mode_and_dim(self, tmp_path):
        with pytest.raises(ValueError, match="mode"):
            render_scatter(SQUARE, [0.1] * 4, mode="rainbow", path=tmp_path / "s.svg")
        line = point_cloud_from_array([[0.0], [1.0], [2.0]])
        with pytest.raises(ValueError, match="2 or 3 dimensions"):
            render_scatter(line, [0.1] * 3, path=tmp_path / "s.svg")


class TestScatterHighlight:
    def test_three_red_rest_gray(self, tmp_path):
        rng = np.random.default_rng(2)
        cloud = point_cloud_from_array(rng.normal(size=(10, 2)))
        out = tmp_path / "s.svg"
        render_scatter(cloud, np.zeros(10), mode="highlight", path=out, highlight_ids=["1", "4", "7"])
        fills = circle_fills(out.read_text())
        assert fills.count(RED) == 3
        assert fills.count(GRAY) == 7
        assert fills[-3:] == [RED] * 3

    def test_unknown_id(self, tmp_path):
        with pytest.raises(KeyError, match="zz"):
            render_scatter(SQUARE, np.zeros(4), mode="highlight", path=tmp_path / "s.svg", highlight_ids=["zz"])


class TestHeatmap:
    def test_zero_matrix_uniform_lightest(self, tmp_path):
        out = tmp_path / "h.svg"
        render_heatmap(np.zeros((2, 2)), ["a", "b"], out)
        text = out.read_text()
        assert rect_fills(text) == ["rgb(245,245,245)"] * 4
        assert text.count(">0.00</text>") == 4

    def test_diagonal_lightest_max_darkest(self, tmp_path):
        out = tmp_path / "h.svg"
        render_heatmap([[0.0, 0.3], [0.5, 0.0]], ["p", "q"], out)
        fills = rect_fills(out.read_text())
        assert fills.count("rgb(245,245,245)") == 2
        assert fills.count("rgb(128,128,128)") == 1
        assert fills.count("rgb(50,50,50)") == 1

    def test_asymmetric_cells_render_distinctly(self, tmp_path):
        out = tmp_path / "h.svg"
        render_heatmap([[0.0, 0.25], [0.5, 0.0]], ["p", "q"], out)
        text = out.read_text()
        assert ">0.25</text>" in text
        assert ">0.50</text>" in text
        row0 = rect_fills(text)
        assert row0[1] != row0[2]

    def test_dark_cells_get_white_annotations(self, tmp_path):
        out = tmp_path / "h.svg"
        render_heatmap([[0.0, 0.3], [0.5, 0.0]], ["p", "q"], out)
        text = out.read_text()
        assert re.search(r'fill="#ffffff">0\.50</text>', text)
        assert re.search(r'fill="#000000">0\.00</text>', text)

    def test_labels_rendered(self, tmp_path):
        out = tmp_path / "h.svg"
        render_heatmap(np.eye(3), ["g1", "g2", "g3"], out)
        text = out.read_text()
        for label in ("g1", "g2", "g3"):
            assert text.count(f">{label}</text>") == 2  # column and row headers

    def test_shape_checks(self, tmp_path):
        with pytest.raises(ValueError, match="square"):
            render_heatmap(np.zeros((2, 3)), ["a", "b"], tmp_path / "h.svg")
        with pytest.raises(ValueError, match="labels"):
            render_heatmap(np.zeros((2, 2)), ["a"], tmp_path / "h.svg")

    def test_byte_identical_and_valid(self, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        render_heatmap([[0.0, 0.1], [0.2, 0.0]], ["x", "y"], a, title="p2 homogeneity")
        render_heatmap([[0.0, 0.1], [0.2, 0.0]], ["x", "y"], b, title="p2 homogeneity")
        assert a.read_bytes() == b.read_bytes()
        minidom.parse(str(a))
