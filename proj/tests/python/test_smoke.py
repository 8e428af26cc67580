import math

import pytest

import geofreq


def test_round_sphere_frequency_is_exact():
    est = geofreq.mean_frequency_constant(2, 1.0, 2 * math.pi, periods=20)
    assert est["mean_frequency"] == pytest.approx(2 / math.pi, abs=1e-6)


def test_scalar_callback_matches_constant():
    est = geofreq.mean_frequency_scalar(lambda t: 4.0, 1.0, periods=20)
    assert est["mean_frequency"] == pytest.approx(2 / math.pi, abs=1e-6)


def test_ellipse_frequency_within_sandwich():
    axes = [1.0, 1.2, 1.5]
    est = geofreq.ellipse_mean_frequency(axes, 0, 1, periods=40)
    box = geofreq.ellipse_sandwich(axes, 0, 1)
    assert box["lower"] < est["mean_frequency"] < box["upper"]


def test_perimeter_of_circle():
    assert geofreq.ellipse_perimeter(1.0, 1.0) == pytest.approx(2 * math.pi, rel=1e-10)


def test_ring_operations():
    assert geofreq.ring_op(3, "Z", "bracket", "A", "U") == "-E"
    assert geofreq.ring_op(3, "Z", "delta", "A*U^3") == "3*U^2"


def test_resonance_on_round_table():
    rep = geofreq.resonance(3, 2 * math.pi, 200)
    assert rep["alpha_bar"] == pytest.approx(2 / math.pi, rel=1e-9)
    assert rep["verdict"]


def test_errors_are_mapped():
    with pytest.raises(geofreq.InvalidModel):
        geofreq.ellipse_mean_frequency([1.0, -1.0, 2.0], 0, 1)
    with pytest.raises(geofreq.GeofreqError):
        geofreq.ring_op(3, "Z", "nope", "A")


def test_cli_roundtrip():
    code, out, _ = geofreq.run_cli(["ring", "--n", "3", "--op", "delta", "--x", "A*U^2"])
    assert code == 0
    assert '"rows"' in out
