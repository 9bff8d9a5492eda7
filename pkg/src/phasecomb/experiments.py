"""Sweep drivers producing tabulated results for plots, demos and the CLI.

Every driver returns a SweepResult: one independent column, one column per
series, plus free-form metadata.  CSV output is deterministic (full-precision
repr floats, no wall-clock stamps) and written atomically.
"""

from __future__ import annotations

import math
import os
import tempfile
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import affine, antenna, geometry, pathloss, snr

TWO_PI = 2.0 * math.pi


@dataclass
class SweepResult:
    name: str
    independent: str
    values: np.ndarray
    series: dict[str, np.ndarray]
    metadata: dict[str, object] = field(default_factory=dict)

    def to_csv(self, path: str | os.PathLike) -> None:
        """Write the sweep atomically: temp file in the same directory, then rename."""
        path = os.fspath(path)
        directory = os.path.dirname(path) or "."
        os.makedirs(directory, exist_ok=True)
        lines = [f"# name: {self.name}"]
        for key, value in self.metadata.items():
            lines.append(f"# {key}: {value}")
        lines.append(",".join([self.independent, *self.series.keys()]))
        columns = [np.asarray(self.values), *self.series.values()]
        for i in range(len(self.values)):
            lines.append(",".join(repr(float(col[i])) for col in columns))
        payload = "\n".join(lines) + "\n"
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(payload)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def loss_curve(n_packets: int, c1: float = 1.0, c2: float = 0.0,
               x_step: float = 1e-3) -> SweepResult:
    """Loss and its weight-independent envelope over x in (0, pi)."""
    x = np.arange(x_step, math.pi, x_step)
    values = snr.loss_values(x, c1, c2, n_packets)
    lower = np.empty_like(x)
    upper = np.empty_like(x)
    for i, xi in enumerate(x):
        lower[i], upper[i] = snr.loss_bounds(float(xi), n_packets)
    return SweepResult(
        name="loss_curve",
        independent="x_rad",
        values=x,
        series={"loss": values, "lower_bound": lower, "upper_bound": upper},
        metadata={"n_packets": n_packets, "c1": c1, "c2": c2},
    )


def a_omega_range(d_x_values, *, delta_a: float, wavelength: float,
                  n_packets: int = 10, t_interval: float = 0.1,
                  dv_max_kmh: float = 60.0, dv_step_kmh: float = 1.0,
                  d_y_values=(-4.0, 4.0), t0: float | None = None) -> SweepResult:
    """Range of the half slope-offset x = a * T / 2 of the phase difference.

    For each starting distance d_x the linearized phase-difference slope a
    is scanned over the speed grid and the lateral offsets, reporting the
    signed min/max and the absolute maximum of a * t_interval / 2.
    """
    d_x_values = np.asarray(d_x_values, dtype=float)
    speeds = geometry.kmh_to_mps(
        np.arange(-dv_max_kmh, dv_max_kmh + 0.5 * dv_step_kmh, dv_step_kmh))
    lo = np.empty_like(d_x_values)
    hi = np.empty_like(d_x_values)
    for i, d_x in enumerate(d_x_values):
        extremes = []
        for d_y in d_y_values:
            for dv in speeds:
                scen = geometry.ScenarioParams(
                    d_x=float(d_x), d_y=float(d_y), delta_v=float(dv),
                    delta_a=delta_a, wavelength=wavelength,
                    n_packets=n_packets, t_interval=t_interval)
                model = affine.taylor_omega(scen, t0)
                extremes.append(0.5 * model.slope * t_interval)
        lo[i] = min(extremes)
        hi[i] = max(extremes)
    return SweepResult(
        name="a_omega_range",
        independent="d_x_m",
        values=d_x_values,
        series={"half_slope_min_rad": lo, "half_slope_max_rad": hi,
                "half_slope_absmax_rad": np.maximum(np.abs(lo), np.abs(hi))},
        metadata={"delta_a_m": delta_a, "wavelength_m": wavelength,
                  "n_packets": n_packets, "t_interval_s": t_interval,
                  "dv_max_kmh": dv_max_kmh, "dv_step_kmh": dv_step_kmh,
                  "d_y_values_m": list(d_y_values)},
    )


def threshold_distance(sweep: SweepResult, bound: float) -> float:
    """Smallest d_x in an a_omega_range sweep past which the absolute half
    slope-offset stays below the bound for every larger tabulated d_x."""
    absmax = sweep.series["half_slope_absmax_rad"]
    exceeding = np.nonzero(absmax >= bound)[0]
    if exceeding.size == 0:
        return float(sweep.values[0])
    if exceeding[-1] + 1 >= len(sweep.values):
        return math.inf
    return float(sweep.values[exceeding[-1] + 1])


def speed_sweep(mode: str, slopes: dict[str, float], dv_kmh_values,
                base: geometry.ScenarioParams, *,
                model: pathloss.PathlossModel | None = None,
                patterns: tuple[antenna.AntennaPattern, antenna.AntennaPattern] | None = None,
                paths: tuple[str, ...] = ("exact", "affine"),
                d_y_values=None, t0: float | None = None,
                n_grid: int = snr.DEFAULT_Y_GRID) -> SweepResult:
    """Worst-case sum-SNR versus relative speed, in dB, per slope and path.

    mode is one of omega|pl|phi|combined.  Values are worst case over
    d_y_values when given (otherwise the base scenario's d_y is used).
    A zero-loss reference series is included for the exact path.
    """
    if mode not in ("omega", "pl", "phi", "combined"):
        raise ValueError(f"unknown sweep mode {mode!r}")
    if mode in ("pl", "combined") and model is None:
        raise ValueError(f"mode {mode!r} needs a pathloss model")
    if mode in ("phi", "combined") and patterns is None:
        raise ValueError(f"mode {mode!r} needs a pair of antenna patterns")
    dv_kmh_values = np.asarray(dv_kmh_values, dtype=float)
    offsets = (base.d_y,) if d_y_values is None else tuple(d_y_values)

    def evaluate(slope, scen, use_exact, zero_loss=False):
        if mode == "omega":
            return snr.sum_snr_omega(slope, scen, use_exact=use_exact, t0=t0,
                                     n_grid=n_grid, zero_loss=zero_loss)
        if mode == "pl":
            return snr.sum_snr_pl(slope, scen, model, use_exact=use_exact,
                                  t0=t0, n_grid=n_grid, zero_loss=zero_loss)
        if mode == "phi":
            return snr.sum_snr_phi(slope, scen, *patterns, use_exact=use_exact,
                                   n_grid=n_grid, zero_loss=zero_loss)
        return snr.sum_snr_combined(slope, scen, model, *patterns,
                                    use_exact=use_exact, t0=t0, n_grid=n_grid,
                                    zero_loss=zero_loss)

    series: dict[str, np.ndarray] = {}
    for label in slopes:
        for path in paths:
            series[f"{label}_{path}_db"] = np.empty(len(dv_kmh_values))
    series["reference_db"] = np.empty(len(dv_kmh_values))

    max_distance = 0.0
    for i, dv_kmh in enumerate(dv_kmh_values):
        scens = [replace(base, delta_v=geometry.kmh_to_mps(float(dv_kmh)), d_y=float(dy))
                 for dy in offsets]
        for scen in scens:
            for t in (0.0, scen.burst_window):
                max_distance = max(max_distance, geometry.transmitter_distance(scen, t))
        for label, slope in slopes.items():
            for path in paths:
                val = min(evaluate(slope, scen, path == "exact") for scen in scens)
                series[f"{label}_{path}_db"][i] = _to_db(val)
        ref = min(evaluate(0.0, scen, True, zero_loss=True) for scen in scens)
        series["reference_db"][i] = _to_db(ref)

    metadata: dict[str, object] = {
        "mode": mode, "d_x_m": base.d_x, "d_y_values_m": list(offsets),
        "delta_a_m": base.delta_a, "wavelength_m": base.wavelength,
        "n_packets": base.n_packets, "t_interval_s": base.t_interval,
        "slopes_rad_per_s": {k: float(v) for k, v in slopes.items()},
    }
    if mode == "combined":
        metadata["affine_path"] = "composed per-factor fits (approximation)"
    if model is not None:
        horizon = pathloss.validity_horizon(model)
        if max_distance > horizon:
            metadata["pl_validity_exceeded"] = True
            warnings.warn(
                f"sweep reaches {max_distance:.1f} m, past the pathloss "
                f"validity horizon {horizon:.1f} m", stacklevel=2)
    return SweepResult(name=f"speed_sweep_{mode}", independent="delta_v_kmh",
                       values=dv_kmh_values, series=series, metadata=metadata)


def _to_db(value: float) -> float:
    if value <= 0.0:
        return -math.inf
    return 10.0 * math.log10(value)


def pl_slope_losses(n_packets: int, *, model: pathloss.PathlossModel | None = None,
                    d_x: float = 30.0, dv_kmh: float = -60.0, d_y: float = 0.0,
                    wavelength: float | None = None, t_interval: float = 0.1,
                    t0: float | None = None) -> SweepResult:
    """Worst-case sum-SNR floor per zero-loss slope under drifting path gain.

    The universal floor 10 log10(1 - 1/((n-1) sin(q pi / n))) bounds any
    positive affine weight drift; the scenario floor evaluates the actual
    drift of the given geometry against the same slopes.
    """
    model = model or pathloss.PathlossModel()
    wavelength = wavelength or geometry.carrier_wavelength(5.9e9)
    q = np.arange(1, n_packets)
    x = q * math.pi / n_packets
    universal = 10.0 * np.log10(1.0 - 1.0 / ((n_packets - 1) * np.sin(x)))
    scen = geometry.ScenarioParams(
        d_x=d_x, d_y=d_y, delta_v=geometry.kmh_to_mps(dv_kmh), delta_a=0.0,
        wavelength=wavelength, n_packets=n_packets, t_interval=t_interval)
    fitted = affine.taylor_pathgain(model, scen, t0)
    c1, c2 = snr.affine_coefficients(fitted.slope, fitted.intercept,
                                     n_packets, t_interval)
    scenario = 10.0 * np.log10(1.0 - snr.loss_values(x, c1, c2, n_packets))
    return SweepResult(
        name="pl_slope_losses",
        independent="q",
        values=q.astype(float),
        series={"floor_universal_db": universal, "floor_scenario_db": scenario},
        metadata={"n_packets": n_packets, "d_x_m": d_x, "dv_kmh": dv_kmh,
                  "d_y_m": d_y, "t_interval_s": t_interval,
                  "c2_over_c1": c2 / c1},
    )
