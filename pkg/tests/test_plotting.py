import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from durrmeyer.plotting import PlotDocument, format_float, read_csv, render_png, write_csv

finite = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(finite)
def test_float_format_is_lossless(v):
    assert float(format_float(v)) == v


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=30))
def test_csv_round_trip(tmp_path_factory, rows):
    path = tmp_path_factory.mktemp("csv") / "t.csv"
    a = np.array([r[0] for r in rows])
    b = np.array([r[1] for r in rows])
    write_csv(path, ["a", "b"], [a, b])
    header, cols = read_csv(path)
    assert header == ["a", "b"]
    np.testing.assert_array_equal(cols["a"], a)
    np.testing.assert_array_equal(cols["b"], b)


def test_empty_csv(tmp_path):
    write_csv(tmp_path / "e.csv", ["x"], [[]])
    header, cols = read_csv(tmp_path / "e.csv")
    assert header == ["x"] and cols["x"].size == 0


def _doc(k):
    x = np.linspace(0, 1, 25)
    doc = PlotDocument("test <&> title", y_label="y")
    for i in range(k):
        doc.add(f"series {i} & <co>", x, np.sin(x * (i + 1)) - i)
    return doc


@pytest.mark.parametrize("k", [1, 3, 13])
def test_svg_is_wellformed_with_one_polyline_per_series(k):
    root = ET.fromstring(_doc(k).to_svg().encode())
    lines = root.findall("{http://www.w3.org/2000/svg}polyline")
    assert len(lines) == k
    colors = {pl.get("stroke") for pl in lines}
    assert len(colors) == k
    for pl in lines:
        assert len(pl.get("points").split()) == 25


def test_svg_points_inside_canvas():
    root = ET.fromstring(_doc(4).to_svg().encode())
    w, h = float(root.get("width")), float(root.get("height"))
    for pl in root.findall("{http://www.w3.org/2000/svg}polyline"):
        for pair in pl.get("points").split():
            px, py = map(float, pair.split(","))
            assert 0 <= px <= w and 0 <= py <= h


def test_ranges_cover_all_series():
    doc = _doc(3)
    (x0, x1), (y0, y1) = doc.ranges()
    for _, xs, ys in doc.series:
        assert x0 <= xs.min() and xs.max() <= x1
        assert y0 <= ys.min() and ys.max() <= y1


def test_flat_series_gets_padding():
    doc = PlotDocument("flat").add("zero", [0, 1], [0.0, 0.0])
    (_, _), (y0, y1) = doc.ranges()
    assert y0 < 0 < y1
    ET.fromstring(doc.to_svg().encode())


@pytest.mark.parametrize("bad", [np.nan, np.inf])
def test_non_finite_points_rejected(bad):
    with pytest.raises(ValueError):
        PlotDocument("t").add("s", [0, 1], [0, bad])


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        PlotDocument("t").add("s", [0, 1, 2], [0, 1])


def test_svg_deterministic(tmp_path):
    a = _doc(2).write_svg(tmp_path / "a.svg").read_bytes()
    b = _doc(2).write_svg(tmp_path / "b.svg").read_bytes()
    assert a == b


def test_png(tmp_path):
    path = render_png(_doc(3), tmp_path / "fig.png")
    assert path.read_bytes()[:4] == b"\x89PNG"
