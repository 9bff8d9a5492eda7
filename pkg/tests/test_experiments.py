"""Sweep drivers: CSV output contract and cross-path consistency."""

import math
import os

import numpy as np
import pytest

from phasecomb import (PathlossModel, ScenarioParams, SweepResult,
                       a_omega_range, builtin_pattern, carrier_wavelength,
                       loss_curve, pl_slope_losses, speed_sweep,
                       threshold_distance)

LAM = carrier_wavelength(5.9e9)
BASE_SLOPE = 2.0 * math.pi / (10 * 0.1)


def base_scen(d_x=30.0, delta_a=10.0 * LAM):
    return ScenarioParams(d_x=d_x, d_y=-4.0, delta_v=0.0, delta_a=delta_a,
                          wavelength=LAM, n_packets=10, t_interval=0.1)


# ---------------------------------------------------------------------------
# loss_curve
# ---------------------------------------------------------------------------

def test_loss_curve_structure():
    res = loss_curve(5, x_step=1e-2)
    assert res.name == "loss_curve"
    assert res.independent == "x_rad"
    assert set(res.series) == {"loss", "lower_bound", "upper_bound"}
    assert res.values[0] == pytest.approx(1e-2)
    assert res.values[-1] < math.pi
    assert np.all(res.series["loss"] >= 0.0)
    assert np.all(res.series["loss"] <= 1.0 + 1e-12)
    assert res.metadata["n_packets"] == 5


def test_loss_curve_constant_weights_sit_on_lower_bound():
    res = loss_curve(10, c1=1.0, c2=0.0, x_step=1e-2)
    np.testing.assert_allclose(res.series["loss"], res.series["lower_bound"],
                               rtol=0.0, atol=1e-15)


def test_loss_curve_bound_order():
    res = loss_curve(8, c1=1.0, c2=0.04, x_step=1e-2)
    assert np.all(res.series["loss"] <= res.series["upper_bound"] + 1e-12)
    assert np.all(res.series["lower_bound"] <= res.series["loss"] + 1e-12)


# ---------------------------------------------------------------------------
# CSV contract
# ---------------------------------------------------------------------------

def test_to_csv_layout_and_precision(tmp_path):
    res = loss_curve(5, x_step=0.5)
    out = tmp_path / "curve.csv"
    res.to_csv(out)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# name: loss_curve"
    meta = [l for l in lines if l.startswith("# ")]
    assert "# n_packets: 5" in meta
    header_i = len(meta)
    assert lines[header_i] == "x_rad,loss,lower_bound,upper_bound"
    rows = lines[header_i + 1:]
    assert len(rows) == len(res.values)
    # repr round-trips every float exactly
    first = [float(f) for f in rows[0].split(",")]
    assert first[0] == res.values[0]
    assert first[1] == res.series["loss"][0]


def test_to_csv_is_deterministic(tmp_path):
    res = loss_curve(7, x_step=0.1)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    res.to_csv(a)
    res.to_csv(b)
    assert a.read_bytes() == b.read_bytes()


def test_to_csv_leaves_no_temp_files(tmp_path):
    res = loss_curve(5, x_step=0.5)
    res.to_csv(tmp_path / "out.csv")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["out.csv"]


def test_to_csv_creates_missing_directories(tmp_path):
    res = loss_curve(5, x_step=0.5)
    target = tmp_path / "nested" / "deeper" / "out.csv"
    res.to_csv(target)
    assert target.is_file()


def test_to_csv_cleans_up_when_rename_fails(tmp_path, monkeypatch):
    res = loss_curve(5, x_step=0.5)

    def boom(src, dst):
        raise OSError("rename refused")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        res.to_csv(tmp_path / "out.csv")
    monkeypatch.undo()
    assert list(tmp_path.iterdir()) == []


# ---------------------------------------------------------------------------
# a_omega_range and thresholds
# ---------------------------------------------------------------------------

def test_a_omega_range_structure():
    res = a_omega_range([20.0, 40.0], delta_a=10.0 * LAM, wavelength=LAM,
                        dv_step_kmh=10.0)
    assert res.independent == "d_x_m"
    assert set(res.series) == {"half_slope_min_rad", "half_slope_max_rad",
                               "half_slope_absmax_rad"}
    assert np.all(res.series["half_slope_min_rad"] <= res.series["half_slope_max_rad"])
    # drift range shrinks with distance
    absmax = res.series["half_slope_absmax_rad"]
    assert absmax[1] < absmax[0]


def test_a_omega_range_narrow_spacing_shrinks_drift():
    wide = a_omega_range([30.0], delta_a=10.0 * LAM, wavelength=LAM,
                         dv_step_kmh=5.0)
    narrow = a_omega_range([30.0], delta_a=0.5 * LAM, wavelength=LAM,
                           dv_step_kmh=5.0)
    ratio = (wide.series["half_slope_absmax_rad"][0]
             / narrow.series["half_slope_absmax_rad"][0])
    assert ratio > 10.0


def synthetic_range_sweep(values, absmax):
    return SweepResult(name="a_omega_range", independent="d_x_m",
                       values=np.asarray(values, dtype=float),
                       series={"half_slope_absmax_rad": np.asarray(absmax)})


def test_threshold_distance_cases():
    sweep = synthetic_range_sweep([10, 20, 30, 40], [5.0, 3.0, 1.0, 0.5])
    assert threshold_distance(sweep, 2.0) == 30.0
    assert threshold_distance(sweep, 10.0) == 10.0    # never exceeded
    assert threshold_distance(sweep, 0.1) == math.inf  # exceeded at the end
    assert threshold_distance(sweep, 0.7) == 40.0


# ---------------------------------------------------------------------------
# speed_sweep
# ---------------------------------------------------------------------------

def test_speed_sweep_rejects_bad_requests():
    with pytest.raises(ValueError):
        speed_sweep("bogus", {"q1": BASE_SLOPE}, [0.0], base_scen())
    with pytest.raises(ValueError):
        speed_sweep("pl", {"q1": BASE_SLOPE}, [0.0], base_scen())
    with pytest.raises(ValueError):
        speed_sweep("phi", {"q1": BASE_SLOPE}, [0.0], base_scen())


def test_speed_sweep_static_channel_is_lossless():
    # with no relative motion every zero-loss slope stays at 0 dB
    slopes = {f"q{q}": q * BASE_SLOPE for q in range(1, 10)}
    res = speed_sweep("omega", slopes, [0.0], base_scen())
    for label in slopes:
        for path in ("exact", "affine"):
            assert res.series[f"{label}_{path}_db"][0] == pytest.approx(0.0, abs=1e-6)
    assert res.series["reference_db"][0] == pytest.approx(0.0, abs=1e-12)


def test_speed_sweep_exact_and_affine_agree_far_out():
    dv = np.arange(-60.0, 61.0, 1.0)
    slopes = {"q1": BASE_SLOPE, "q5": 5.0 * BASE_SLOPE}
    res = speed_sweep("omega", slopes, dv, base_scen(d_x=100.0),
                      d_y_values=(-4.0, 4.0))
    for label in slopes:
        gap = np.abs(res.series[f"{label}_exact_db"]
                     - res.series[f"{label}_affine_db"])
        assert float(np.max(gap)) < 0.1


def test_speed_sweep_narrow_spacing_never_does_worse():
    # the drift-prone slope loses less at lambda/2 separation than at 10
    # lambda, at every speed
    dv = np.arange(-60.0, 61.0, 1.0)
    slopes = {"q1": BASE_SLOPE}
    curves = {}
    for spacing in (0.5 * LAM, 10.0 * LAM):
        curves[spacing] = speed_sweep("omega", slopes, dv, base_scen(delta_a=spacing),
                                      d_y_values=(-4.0, 4.0))
    for path in ("exact", "affine"):
        narrow = curves[0.5 * LAM].series[f"q1_{path}_db"]
        wide = curves[10.0 * LAM].series[f"q1_{path}_db"]
        assert np.all(narrow >= wide - 1e-9)


def test_speed_sweep_exact_dip_is_shallower_than_affine_up_close():
    # the linearized model overstates the worst case at short range
    dv = np.arange(-60.0, 61.0, 1.0)
    res = speed_sweep("omega", {"q1": BASE_SLOPE}, dv, base_scen(d_x=10.0),
                      d_y_values=(-4.0, 4.0))
    aff = res.series["q1_affine_db"]
    exa = res.series["q1_exact_db"]
    i = int(np.argmin(aff))
    assert exa[i] > aff[i] + 3.0


def test_speed_sweep_combined_dip_depths():
    slopes = {"q1": BASE_SLOPE, "q5": 5.0 * BASE_SLOPE}
    model = PathlossModel()
    pats = (builtin_pattern("patch_front"), builtin_pattern("patch_rear"))
    dv = np.arange(-60.0, 61.0, 1.0)
    dips = {}
    for d_x in (30.0, 10.0):
        res = speed_sweep("combined", slopes, dv, base_scen(d_x=d_x),
                          model=model, patterns=pats, paths=("exact",),
                          d_y_values=(-4.0, 4.0))
        ref = res.series["reference_db"]
        dips[d_x] = {lab: float(np.max(ref - res.series[f"{lab}_exact_db"]))
                     for lab in slopes}
        assert res.metadata["affine_path"].startswith("composed")
    assert dips[30.0]["q1"] == pytest.approx(13.0, abs=2.0)
    assert dips[10.0]["q1"] > dips[30.0]["q1"]     # closer means deeper
    assert dips[30.0]["q1"] - dips[30.0]["q5"] >= 5.0
    assert dips[10.0]["q1"] - dips[10.0]["q5"] >= 5.0


def test_speed_sweep_flags_pathloss_validity():
    model = PathlossModel()
    slopes = {"q5": 5.0 * BASE_SLOPE}
    with pytest.warns(UserWarning, match="validity"):
        res = speed_sweep("pl", slopes, [0.0, 60.0], base_scen(d_x=200.0),
                          model=model)
    assert res.metadata["pl_validity_exceeded"] is True
    inside = speed_sweep("pl", slopes, [0.0], base_scen(d_x=30.0), model=model)
    assert "pl_validity_exceeded" not in inside.metadata


# ---------------------------------------------------------------------------
# pl_slope_losses
# ---------------------------------------------------------------------------

def test_pl_slope_losses_universal_floor_values():
    res = pl_slope_losses(10)
    np.testing.assert_allclose(res.values, np.arange(1, 10, dtype=float), atol=0.0)
    uni = res.series["floor_universal_db"]
    want_q1 = 10.0 * math.log10(1.0 - 1.0 / (9.0 * math.sin(math.pi / 10.0)))
    assert uni[0] == pytest.approx(want_q1, abs=1e-12)
    assert uni[0] == pytest.approx(-1.9352, abs=1e-4)
    assert uni[4] == pytest.approx(-0.5115, abs=1e-4)


def test_pl_slope_losses_symmetric_in_q():
    res = pl_slope_losses(10)
    for key in ("floor_universal_db", "floor_scenario_db"):
        series = res.series[key]
        np.testing.assert_allclose(series, series[::-1], atol=1e-10)


def test_pl_slope_losses_scenario_floor_above_universal():
    # the actual drift of the default geometry is milder than the bound
    res = pl_slope_losses(10)
    assert np.all(res.series["floor_scenario_db"]
                  >= res.series["floor_universal_db"] - 1e-12)
    assert math.isfinite(res.metadata["c2_over_c1"])
