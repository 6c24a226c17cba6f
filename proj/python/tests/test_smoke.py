import math

import pytest

import homckn


def test_dimensions_and_norms():
    assert homckn.homogeneous_dimension("r:3") == 3
    assert homckn.homogeneous_dimension("heis1") == 4
    assert homckn.homogeneous_dimension("aniso:1,2") == 3
    # koranyi gauge of (0, 0, 1): (16)^(1/4)
    assert homckn.norm("heis1", "koranyi", [0.0, 0.0, 1.0]) == pytest.approx(2.0, rel=1e-15)
    assert homckn.homogeneity_deviation("heis1", "koranyi", 200, 3) <= 1e-12


def test_radial_derivative_of_gaussian():
    x = [0.6, 0.0, 0.8]
    d = homckn.radial_derivative("r:3", "euclid", x)
    assert d.real == pytest.approx(-math.exp(-0.5), rel=1e-14)
    fd = homckn.radial_derivative("r:3", "euclid", x, mode="orbit_fd")
    assert abs(fd - d) < 1e-8


def test_sphere_measure():
    s = homckn.sphere_measure("r:2", "euclid")
    assert s["value"] == pytest.approx(2 * math.pi, rel=1e-3)
    assert s["group"] == "r:2"


def test_constants():
    c = homckn.constants(5, 2, alpha=1, theta=1, k=2)
    assert c["iterated_hardy"] == pytest.approx(4 / 3, rel=1e-15)
    d = homckn.constants(4, 2, alpha=0, k=2)
    assert d["l2_higher"] is None
    assert d["hpw2"] == 2.0


def test_verify_gaussian_hardy():
    out = homckn.verify({"checks": ["hardy"], "corpus": {"kind": "gaussian"}})
    assert out["summary"]["exit_code"] == 0
    assert len(out["reports"]) == 1
    r = out["reports"][0]
    assert r["id"] == "hardy"
    assert r["satisfied"]
    assert r["ratio"] ** 2 == pytest.approx(1 / 3, rel=1e-6)


def test_verify_config_error():
    with pytest.raises(homckn.HomcknError, match="empty parameter grid"):
        homckn.verify({"grid": {"p": []}})


def test_sharpness_scan():
    r = homckn.sharpness_scan("r:3", "euclid", schedule=[(1e-1, 1e1), (1e-2, 1e2)])
    assert r["theoretical"] == 0.5
    assert len(r["schedule"]) == 2
    assert r["schedule"][1]["attained"] < r["schedule"][0]["attained"]
    with pytest.raises(homckn.HomcknError, match="gamma = Q"):
        homckn.sharpness_scan("r:3", "euclid", alpha=0.0, beta=2.0)
