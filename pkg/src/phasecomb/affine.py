"""Affine-in-time models of slowly drifting channel quantities.

The closed-form burst machinery needs each time-varying quantity reduced to
slope * t + intercept over the burst window.  Two routes produce such a
model: a first-order Taylor expansion of the known closed-form quantity
around a chosen instant (default: the middle of the burst window), or an
unweighted least-squares fit through sampled values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import geometry, pathloss
from .errors import DegenerateSamples, PositivityViolation, ValidityViolation

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AffineModel:
    """slope * t + intercept, tagged with how and over which window it was made."""

    slope: float
    intercept: float
    method: str = "taylor"                    # "taylor" or "least_squares"
    window: tuple[float, float] = (0.0, 0.0)  # time span the model is meant for

    def __call__(self, t):
        return self.intercept + self.slope * np.asarray(t, dtype=float)


def _default_t0(scen: geometry.ScenarioParams, t0: float | None) -> float:
    # Mid-burst expansion balances the residual over the packet times.
    return 0.5 * scen.burst_window if t0 is None else t0


def taylor_omega(scen: geometry.ScenarioParams, t0: float | None = None) -> AffineModel:
    """First-order model of the branch phase difference around t0.

    The slope is (2 pi / wavelength) * delta_v * u * (1/d_1 - 1/d_0) with
    u the along-track transmitter coordinate at t0.
    """
    t0 = _default_t0(scen, t0)
    d0, d1 = geometry.propagation_distances(scen, t0)
    u = scen.d_x + scen.delta_v * t0
    slope = (TWO_PI / scen.wavelength) * scen.delta_v * u * (1.0 / d1 - 1.0 / d0)
    intercept = geometry.omega_exact(scen, t0) - slope * t0
    return AffineModel(slope=slope, intercept=intercept, method="taylor",
                       window=(0.0, scen.burst_window))


def taylor_pathgain(model: pathloss.PathlossModel, scen: geometry.ScenarioParams,
                    t0: float | None = None) -> AffineModel:
    """First-order model of the mean path gain around t0.

    Requires the transmitter to stay beyond the model's reference distance
    for the whole burst (the linearization cannot cross the clamp), and the
    resulting per-packet weights to stay positive.
    """
    t0 = _default_t0(scen, t0)
    window = scen.burst_window
    # Minimum distance over the burst: an endpoint, or the closest approach
    # if the along-track coordinate changes sign inside the window.
    candidates = [0.0, window]
    if scen.delta_v != 0.0:
        t_turn = -scen.d_x / scen.delta_v
        if 0.0 < t_turn < window:
            candidates.append(t_turn)
    d_min = min(geometry.transmitter_distance(scen, t) for t in candidates)
    if d_min <= model.d_ref:
        raise ValidityViolation(
            f"distance {d_min:.3f} m reaches the reference distance "
            f"{model.d_ref:.3f} m inside the burst window")
    u = scen.d_x + scen.delta_v * t0
    d_t0 = geometry.transmitter_distance(scen, t0)
    scale = model.shadowing_mean * model.ref_gain * model.d_ref ** model.exponent
    slope = -scale * model.exponent * scen.delta_v * u / d_t0 ** (model.exponent + 2.0)
    intercept = pathloss.mean_path_gain(model, d_t0) - slope * t0
    fitted = AffineModel(slope=slope, intercept=intercept, method="taylor",
                         window=(0.0, window))
    require_positive(fitted, scen.packet_times())
    return fitted


def least_squares_fit(times, values) -> AffineModel:
    """Unweighted least-squares affine fit through (times, values)."""
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.size < 2 or v.shape != t.shape:
        raise DegenerateSamples("need at least two samples of matching shape")
    if float(np.ptp(t)) == 0.0:
        raise DegenerateSamples("sample times are all identical")
    slope, intercept = np.polyfit(t, v, 1)
    return AffineModel(slope=float(slope), intercept=float(intercept),
                       method="least_squares",
                       window=(float(t.min()), float(t.max())))


def require_positive(model: AffineModel, times, strict: bool = True) -> bool:
    """Check that the model stays strictly positive at the given times.

    The closed forms assume positive per-packet weights, so strict=True
    raises PositivityViolation; the brute-force path tolerates sign flips
    and only warns.
    """
    values = model(np.asarray(times, dtype=float))
    if np.all(values > 0.0):
        return True
    if strict:
        raise PositivityViolation(
            f"affine weight model dips to {float(values.min()):.3e} "
            "inside the burst")
    warnings.warn("affine weight model is not positive over the burst; "
                  "closed-form loss figures do not apply", stacklevel=2)
    return False


def fit_antenna_phase_diff(responses) -> AffineModel:
    """Affine fit of the branch phase difference along the sampled burst.

    The per-packet difference is unwrapped before fitting so a 2 pi seam in
    either branch's tabulated phase cannot masquerade as drift.
    """
    diff = np.unwrap(np.asarray(responses.phase0) - np.asarray(responses.phase1))
    return least_squares_fit(responses.times, diff)


def fit_antenna_gain_product(responses, strict: bool = True) -> AffineModel:
    """Affine fit of |g0| * |g1| along the sampled burst.

    strict controls the positivity check on the fitted line (see
    require_positive).
    """
    product = np.asarray(responses.mag0) * np.asarray(responses.mag1)
    fitted = least_squares_fit(responses.times, product)
    require_positive(fitted, responses.times, strict=strict)
    return fitted
