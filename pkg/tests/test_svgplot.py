import xml.etree.ElementTree as ET

import numpy as np
import pytest

from leachsim import ParameterError, render_profile_svg


def two_series():
    z = np.linspace(0.0, 10.0, 11)
    return [(z, 675.0 * np.exp(-0.3 * z)), (z, 675.0 * np.exp(-0.6 * z))]


def test_determinism_byte_for_byte():
    a = render_profile_svg(two_series(), ["neumann", "reflect"], title="comparison")
    b = render_profile_svg(two_series(), ["neumann", "reflect"], title="comparison")
    assert a == b


def test_is_wellformed_xml_with_one_polyline_per_series():
    text = render_profile_svg(two_series(), ["a", "b"])
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert len(polylines) == 2


def test_legend_contains_labels_and_axis_names():
    text = render_profile_svg(two_series(), ["zero-flux sides", "mirrored sides"])
    assert "zero-flux sides" in text and "mirrored sides" in text
    assert "depth z (cm)" in text and "concentration (mg/L)" in text


def test_label_escaping():
    text = render_profile_svg(two_series(), ["a<b", "c&d"])
    assert "a&lt;b" in text and "c&amp;d" in text
    ET.fromstring(text)


def test_no_series_rejected():
    with pytest.raises(ParameterError):
        render_profile_svg([], [])


def test_single_point_series_rejected():
    with pytest.raises(ParameterError, match="two points"):
        render_profile_svg([(np.array([1.0]), np.array([2.0]))], ["dot"])


def test_mismatched_labels_rejected():
    with pytest.raises(ParameterError, match="label"):
        render_profile_svg(two_series(), ["only-one"])


def test_nonfinite_series_rejected():
    z = np.linspace(0, 5, 6)
    c = z.copy()
    c[3] = np.nan
    with pytest.raises(ParameterError, match="finite"):
        render_profile_svg([(z, c)], ["bad"])


def test_flat_series_still_renders():
    z = np.linspace(0, 5, 6)
    text = render_profile_svg([(z, np.full(6, 2.0))], ["flat"])
    ET.fromstring(text)
