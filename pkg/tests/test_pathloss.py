"""Log-distance path gain model and its JSON exchange format."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from phasecomb import (NonPositiveDistance, PathlossModel, ScenarioParams,
                       distance_at, dump_pathloss_config, load_pathloss_config,
                       mean_path_gain, validity_horizon)


def test_shadowing_mean_against_quadrature():
    # E[10^(X/10)] for X ~ N(0, sigma^2), integrated numerically
    for sigma in (1.0, 3.0, 6.0):
        model = PathlossModel(sigma_shadow_db=sigma)
        want, err = integrate.quad(
            lambda u: 10.0 ** (u / 10.0) * stats.norm.pdf(u, scale=sigma),
            -12.0 * sigma, 12.0 * sigma)
        assert err < 1e-6
        assert model.shadowing_mean == pytest.approx(want, rel=1e-7)


def test_shadowing_mean_default_value():
    assert PathlossModel().shadowing_mean == pytest.approx(1.2695, abs=1e-4)


def test_mean_path_gain_hand_value():
    model = PathlossModel()
    want = model.shadowing_mean * 10.0 ** -5.32 * (3.0 / 30.0) ** 2.27
    assert mean_path_gain(model, 30.0) == pytest.approx(want, rel=1e-12)


def test_mean_path_gain_clamps_below_reference_distance():
    model = PathlossModel()
    assert mean_path_gain(model, 1.0) == mean_path_gain(model, 3.0)
    assert mean_path_gain(model, 2.9) == mean_path_gain(model, model.d_ref)


def test_mean_path_gain_strictly_decreasing_past_reference():
    model = PathlossModel()
    d = np.linspace(model.d_ref, 300.0, 200)
    g = mean_path_gain(model, d)
    assert np.all(np.diff(g) < 0.0)


def test_mean_path_gain_vectorized():
    model = PathlossModel()
    d = np.array([5.0, 20.0, 100.0])
    g = mean_path_gain(model, d)
    assert g.shape == (3,)
    for i, di in enumerate(d):
        assert g[i] == mean_path_gain(model, float(di))


def test_mean_path_gain_rejects_nonpositive_distance():
    model = PathlossModel()
    with pytest.raises(NonPositiveDistance):
        mean_path_gain(model, 0.0)
    with pytest.raises(NonPositiveDistance):
        mean_path_gain(model, np.array([5.0, -1.0]))


def test_model_validation():
    with pytest.raises(ValueError):
        PathlossModel(ref_gain=0.0)
    with pytest.raises(ValueError):
        PathlossModel(d_ref=-3.0)
    with pytest.raises(ValueError):
        PathlossModel(sigma_shadow_db=-1.0)


def test_distance_at_delegates_to_geometry():
    scen = ScenarioParams(d_x=30.0, d_y=-4.0, delta_v=10.0, delta_a=0.5,
                          wavelength=0.0508)
    assert distance_at(scen, 0.5) == pytest.approx(math.hypot(35.0, 4.0), abs=1e-12)


def test_validity_horizon():
    assert validity_horizon(PathlossModel()) == 177.0
    assert validity_horizon(PathlossModel(validity_m=50.0)) == 50.0


def test_config_round_trip(tmp_path):
    model = PathlossModel(ref_gain=10.0 ** -4.8, d_ref=5.0, exponent=2.0,
                          sigma_shadow_db=4.0, validity_m=120.0)
    path = tmp_path / "pl.json"
    dump_pathloss_config(model, path)
    loaded = load_pathloss_config(path)
    assert loaded.ref_gain == pytest.approx(model.ref_gain, rel=1e-14)
    assert loaded.d_ref == model.d_ref
    assert loaded.exponent == model.exponent
    assert loaded.sigma_shadow_db == model.sigma_shadow_db
    assert loaded.validity_m == model.validity_m


def test_config_missing_keys_fall_back_to_defaults(tmp_path):
    path = tmp_path / "pl.json"
    path.write_text('{"n_e": 2.0}\n', encoding="utf-8")
    model = load_pathloss_config(path)
    defaults = PathlossModel()
    assert model.exponent == 2.0
    assert model.ref_gain == defaults.ref_gain
    assert model.d_ref == defaults.d_ref
    assert model.sigma_shadow_db == defaults.sigma_shadow_db


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "pl.json"
    path.write_text('{"n_e": 2.0, "bogus": 1}\n', encoding="utf-8")
    with pytest.raises(ValueError, match="bogus"):
        load_pathloss_config(path)


def test_config_dump_is_deterministic(tmp_path):
    model = PathlossModel()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    dump_pathloss_config(model, a)
    dump_pathloss_config(model, b)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().endswith("\n")
