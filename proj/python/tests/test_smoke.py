import math

import pytest

import nfsolv


def test_check_potential_gaussian(tmp_path):
    config = {"potential": {"family": "gaussian", "params": {"beta": 1.0}}}
    code, report = nfsolv.run("check-potential", config, str(tmp_path))
    assert code == 0
    assert report["assumption"]["passed"] is True
    assert abs(report["assumption"]["smallness_value"] - 0.572) < 2e-3


def test_bad_config_key_raises_value_error():
    with pytest.raises(ValueError):
        nfsolv.run("check-potential", {"potentail": {}})


def test_q_bound():
    bound, radius = nfsolv.q_bound("gaussian", 1.0)
    assert abs(bound - 0.572) < 2e-3
    assert radius > 0.0


def test_constants():
    assert abs(nfsolv.sphere_surface_measure(3, 1.0) - 4.0 * math.pi) < 1e-12
    assert abs(nfsolv.c_hls_default() - 7.30) < 0.01
