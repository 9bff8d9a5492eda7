"""Worst-case burst sum-SNR of a two-branch analog phase-slope combiner.

A burst of n_packets packets arrives at times k * t_interval.  Branch l of
the combiner adds the deterministic phase slope_l * t + offset_l before the
branches are summed, so each packet's combined power carries a cross term.
With per-packet weights w_k the burst cross term is

    J(y) = sum_k w_k * cos(y - 2 * x * k),

where x is half the slope difference times t_interval and y collects all
constant phase offsets.  The environment is scored at the worst y.  For
affine weights w_k = b + a * k * T the sum collapses to a closed form built
from the Dirichlet-kernel ratio f1(x) = sin(n x) / sin(x) and its
derivative f2 = f1', which yields the worst-case y, the worst-case value
-R(x), and the relative loss L(x) = R(x) / (c1 n) without any search.

Two slope sets organize the analysis:

* severe set, x in {q pi}: every packet adds with the same phase, the worst
  y nulls the whole burst (loss 1);
* zero-loss set, x in {q pi / n} minus the severe set: the cross term
  vanishes identically, no y can hurt the burst (loss 0 for constant
  weights).

Spacing branch slopes so all pairwise differences land in the zero-loss set
makes the burst immune to any constant offset y; the design rule picks the
member of that set farthest from the severe set, which stays robust when
the slope difference is perturbed by channel dynamics.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import affine, antenna, geometry, pathloss
from .errors import DomainX, NonPositiveC1

TWO_PI = 2.0 * math.pi

# |sin(x)| below this counts as "on a pole", i.e. x in the severe set.
X_TOL = 1e-9

# Below this |sin(x)| the direct kernel formulas lose digits (argument
# rounding of n*x in f1, amplified by 1/sin^2 in f2) and pole-centered
# forms take over.
_POLE_TOL = 0.05

# Within this offset from a pole the pole-centered f2 numerator itself
# cancels and a series in the offset takes over.
_SERIES_TOL = 1e-3

# pi minus its float value: tail of a two-term split used near poles.
_PI_TAIL = 1.2246467991473532e-16

# Grid size for the brute-force search over the offset phase y.
DEFAULT_Y_GRID = 100_000

# Transmit power over noise power, 23 dBm - (-95 dBm) = 118 dB.
DESIGN_SNR_SCALE = 10.0 ** 11.8


def in_severe_set(x: float) -> bool:
    """True when x is within tolerance of a multiple of pi."""
    return abs(math.sin(x)) < X_TOL


def in_zero_loss_set(x: float, n_packets: int) -> bool:
    """True when x is within tolerance of q * pi / n_packets but not of q * pi."""
    if in_severe_set(x):
        return False
    return abs(math.sin(n_packets * x)) < n_packets * X_TOL


def _f2_series_tail(e, n: int):
    """Bracketed factor of the f2 numerator series -(n^3-n)/3 * e^3 * (...)."""
    e2 = e * e
    c4 = (n ** 4 + n * n + 1) / 280.0 + n * n / 120.0
    return 1.0 - (n * n + 1) * e2 / 10.0 + c4 * e2 * e2


def _pole_offset(x: float) -> tuple[float, int]:
    """Split x into q*pi + e with |e| <= pi/2 and e accurate near poles.

    math.remainder is exact against the float value of pi; the _PI_TAIL
    correction accounts for the part of pi the float drops, which would
    otherwise cost ~8 digits in sin(n*x) when x sits within 1e-4 of a pole.
    """
    e = math.remainder(x, math.pi)
    q = round((x - e) / math.pi)
    return e - q * _PI_TAIL, q


def f1(x: float, n_packets: int) -> float:
    """Dirichlet-kernel ratio sin(n x) / sin(x); |f1| <= n everywhere."""
    sx = math.sin(x)
    if abs(sx) < X_TOL:
        raise DomainX(f"x={x!r} is within tolerance of a multiple of pi")
    if abs(sx) < _POLE_TOL:
        e, q = _pole_offset(x)
        sign = -1.0 if (q * n_packets) % 2 else 1.0
        return sign * math.sin(n_packets * e) / sx
    return math.sin(n_packets * x) / sx

def f2(x: float, n_packets: int) -> float:
    """Derivative of f1 with respect to x."""
    sx = math.sin(x)
    if abs(sx) < X_TOL:
        raise DomainX(f"x={x!r} is within tolerance of a multiple of pi")
    n = n_packets
    if abs(sx) < _POLE_TOL:
        e, q = _pole_offset(x)
        sign = -1.0 if (q * (n + 1)) % 2 else 1.0
        if abs(e) < _SERIES_TOL:
            # numerator cancels catastrophically; series in the offset
            num = -(n ** 3 - n) / 3.0 * e ** 3 * _f2_series_tail(e, n)
        else:
            num = n * math.cos(n * e) * math.sin(e) - math.sin(n * e) * math.cos(e)
        return sign * num / (sx * sx)
    return n * math.cos(n * x) / sx - math.sin(n * x) * math.cos(x) / (sx * sx)


def affine_coefficients(slope: float, intercept: float, n_packets: int,
                        t_interval: float) -> tuple[float, float]:
    """Map an affine weight model b + a*t sampled at packet times to (c1, c2).

    c1 is the mean per-packet weight, c2 half the per-interval increment;
    the closed-form cross term depends on the weights only through them.
    """
    c1 = intercept + slope * t_interval * (n_packets - 1) / 2.0
    c2 = slope * t_interval / 2.0
    return c1, c2


def c_ratio_squared(w: float, n_packets: int, t_interval: float) -> float:
    """Squared ratio (c2 / c1)^2 as a function of w = slope / intercept.

    Defined for w > -1 / ((n_packets - 1) * t_interval), the region where
    all per-packet weights stay positive.  Decreasing in w below 0,
    increasing above: faster weight drift in either direction costs more.
    """
    a_edge = 1.0 / ((n_packets - 1) * t_interval)
    if w <= -a_edge:
        raise NonPositiveC1(f"w={w!r} leaves the positive-weight region")
    return (w / ((n_packets - 1) * (w + 2.0 * a_edge))) ** 2


def loss(x: float, c1: float, c2: float, n_packets: int) -> float:
    """Relative worst-case loss of the burst cross term, in [0, 1].

    1 on the severe set; off it, R(x) / (c1 n) with
    R = sqrt((c1 f1)^2 + (c2 f2)^2).  Weights must average positive.
    """
    if c1 <= 0.0:
        raise NonPositiveC1("mean per-packet weight must be positive")
    if in_severe_set(x):
        return 1.0
    r = math.hypot(c1 * f1(x, n_packets), c2 * f2(x, n_packets))
    return r / (c1 * n_packets)


def loss_values(x, c1: float, c2: float, n_packets: int) -> np.ndarray:
    """Vectorized loss over an array of x; severe points evaluate to 1."""
    if c1 <= 0.0:
        raise NonPositiveC1("mean per-packet weight must be positive")
    x = np.asarray(x, dtype=float)
    n = n_packets
    sx = np.sin(x)
    severe = np.abs(sx) < X_TOL
    safe = np.where(severe, 1.0, sx)
    f1v = np.sin(n * x) / safe
    f2v = n * np.cos(n * x) / safe - np.sin(n * x) * np.cos(x) / (safe * safe)
    near = (np.abs(sx) < _POLE_TOL) & ~severe
    if np.any(near):
        # same pole-centered fallbacks as the scalar f1/f2; fmod is exact
        # and the fold subtractions are exact by Sterbenz, matching the
        # scalar math.remainder path bit for bit
        r = np.fmod(x, np.pi)
        e = np.where(r > np.pi / 2, r - np.pi,
                     np.where(r < -np.pi / 2, r + np.pi, r))
        q = np.rint((x - e) / np.pi)
        e = e - q * _PI_TAIL
        sign1 = np.where(np.mod(q * n, 2) == 0, 1.0, -1.0)
        sign2 = np.where(np.mod(q * (n + 1), 2) == 0, 1.0, -1.0)
        series = -(n ** 3 - n) / 3.0 * e ** 3 * _f2_series_tail(e, n)
        direct = n * np.cos(n * e) * np.sin(e) - np.sin(n * e) * np.cos(e)
        num = np.where(np.abs(e) < _SERIES_TOL, series, direct)
        f1v = np.where(near, sign1 * np.sin(n * e) / safe, f1v)
        f2v = np.where(near, sign2 * num / (safe * safe), f2v)
    out = np.hypot(c1 * f1v, c2 * f2v) / (c1 * n)
    out = np.where(severe, 1.0, out)
    return out


def loss_bounds(x: float, n_packets: int) -> tuple[float, float]:
    """Weight-independent envelope (lower, upper) of the loss at x.

    lower = |f1| / n holds for any admissible weights (and is the loss for
    constant weights); upper = sqrt((n-1)^2 f1^2 + f2^2) / (n (n-1)) holds
    for any positive affine weights.  On the severe set both collapse to 1.
    """
    if in_severe_set(x):
        return 1.0, 1.0
    n = n_packets
    f1v = f1(x, n)
    f2v = f2(x, n)
    lower = abs(f1v) / n
    upper = math.hypot((n - 1) * f1v, f2v) / (n * (n - 1))
    return lower, upper


def interval_loss_bound(n_packets: int) -> float:
    """Loss ceiling for constant weights when x is kept at least pi / n away
    from the severe set: max of 1 / (n sin(x)) over [pi/n, (n-1) pi/n],
    attained at the interval edges."""
    return 1.0 / (n_packets * math.sin(math.pi / n_packets))


def j_direct(slopes, psi, gains, weights, t_interval: float) -> float:
    """Direct double-sum cross term of the combined burst power.

    slopes: (L,) per-branch phase slopes [rad/s];
    psi: (K, L) per-packet per-branch phase offsets [rad];
    gains: (K, L) per-packet per-branch magnitudes;
    weights: (K,) per-packet weights.

    Plain trigonometric sum, no approximation; the reference the closed
    forms are tested against.
    """
    slopes = np.asarray(slopes, dtype=float)
    psi = np.asarray(psi, dtype=float)
    gains = np.asarray(gains, dtype=float)
    weights = np.asarray(weights, dtype=float)
    n_packets, n_branches = psi.shape
    tk = np.arange(n_packets) * t_interval
    total = 0.0
    for l in range(n_branches):
        for m in range(l + 1, n_branches):
            ang = psi[:, m] - psi[:, l] - (slopes[m] - slopes[l]) * tk
            total += float(np.sum(weights * gains[:, l] * gains[:, m] * np.cos(ang)))
    return 2.0 * total / n_branches


def j_affine(x: float, y: float, c1: float, c2: float, n_packets: int) -> float:
    """Closed form of sum_k (b + a k T) cos(y - 2 x k) via (c1, c2).

    On the severe set the sum is c1 n cos(y); elsewhere it is the two-term
    Dirichlet form.
    """
    n = n_packets
    if in_severe_set(x):
        return c1 * n * math.cos(y)
    u = y - (n - 1) * x
    return c1 * f1(x, n) * math.cos(u) - c2 * f2(x, n) * math.sin(u)


def worst_case_y(x: float, c1: float, c2: float,
                 n_packets: int) -> tuple[float, float]:
    """Offset phase minimizing the affine cross term, and the minimum value.

    Returns (y_min, j_min) with y_min in [0, 2 pi).  When the cross term
    vanishes identically (c2 = 0 and f1(x) = 0) the convention is (0, 0).
    """
    if c1 <= 0.0:
        raise NonPositiveC1("mean per-packet weight must be positive")
    n = n_packets
    if in_severe_set(x):
        return math.pi, -c1 * n
    v1 = c1 * f1(x, n)
    v2 = c2 * f2(x, n)
    r = math.hypot(v1, v2)
    if r == 0.0:
        return 0.0, 0.0
    y_min = ((n - 1) * x + math.pi - math.atan2(v2, v1)) % TWO_PI
    return y_min, -r


def worst_case_y_scan(weights, phases, n_grid: int = DEFAULT_Y_GRID) -> tuple[float, float]:
    """Brute-force minimum over a y grid of sum_k w_k cos(theta_k - y).

    Works for arbitrary per-packet weights and phases; this is what the
    exact (non-affine) evaluation paths use.  The sum is expanded once into
    its cos(y) / sin(y) components, so the scan costs O(K + n_grid).
    """
    weights = np.asarray(weights, dtype=float)
    phases = np.asarray(phases, dtype=float)
    y = np.arange(n_grid) * (TWO_PI / n_grid)
    cw = float(np.sum(weights * np.cos(phases)))
    sw = float(np.sum(weights * np.sin(phases)))
    vals = cw * np.cos(y) + sw * np.sin(y)
    i = int(np.argmin(vals))
    return float(y[i]), float(vals[i])


def optimal_slope_set(n_packets: int, t_interval: float) -> np.ndarray:
    """All slope differences whose half-angle per interval lands in the
    zero-loss set: q * 2 pi / (n_packets * t_interval), q = 1 .. n_packets - 1."""
    base = TWO_PI / (n_packets * t_interval)
    return np.arange(1, n_packets) * base


def design_rule_alpha_star(n_packets: int, t_interval: float) -> np.ndarray:
    """Members of the optimal slope set farthest from the severe set.

    One slope for even n_packets (q = n/2), the two straddling q for odd
    n_packets.  These maximize the margin |x - q pi| under slope
    perturbation, i.e. stay robust when channel dynamics shift x.
    """
    base = TWO_PI / (n_packets * t_interval)
    if n_packets % 2 == 0:
        qs = [n_packets // 2]
    else:
        qs = [(n_packets - 1) // 2, (n_packets + 1) // 2]
    return np.array([q * base for q in qs])


def check_optimality(slopes: Sequence[float], n_packets: int,
                     t_interval: float) -> bool:
    """True when every pairwise slope difference lands in the zero-loss set.

    Under that condition the burst cross term vanishes for constant weights
    regardless of the offset phases, for any number of branches.
    """
    s = np.asarray(slopes, dtype=float)
    if s.size < 2:
        raise ValueError("need at least two branch slopes")
    for l in range(s.size):
        for m in range(l + 1, s.size):
            x = 0.5 * (s[m] - s[l]) * t_interval
            if not in_zero_loss_set(x, n_packets):
                return False
    return True


# ---------------------------------------------------------------------------
# Mode evaluators: worst-case sum-SNR with one channel quantity time-varying.
# ---------------------------------------------------------------------------

def sum_snr_omega(slope: float, scen: geometry.ScenarioParams, *,
                  use_exact: bool = True, t0: float | None = None,
                  n_grid: int = DEFAULT_Y_GRID,
                  zero_loss: bool = False) -> float:
    """Worst-case sum-SNR with only the branch phase difference varying.

    Normalized by n_packets, so 1.0 means no combining loss.  The exact
    path scans the offset phase with the true per-packet phase difference;
    the affine path linearizes it around t0 (default mid-burst) and uses
    the closed form.
    """
    n = scen.n_packets
    if zero_loss:
        return 1.0
    if use_exact:
        tk = scen.packet_times()
        theta = geometry.omega_exact(scen, tk) - slope * tk
        _, j_min = worst_case_y_scan(np.ones(n), theta, n_grid)
        return (n + j_min) / n
    model = affine.taylor_omega(scen, t0)
    x = 0.5 * (slope - model.slope) * scen.t_interval
    return 1.0 - loss(x, 1.0, 0.0, n)


def sum_snr_pl(slope: float, scen: geometry.ScenarioParams,
               model: pathloss.PathlossModel, *, use_exact: bool = True,
               fit: str = "taylor", t0: float | None = None,
               n_grid: int = DEFAULT_Y_GRID, zero_loss: bool = False) -> float:
    """Worst-case sum-SNR with the mean path gain varying over the burst.

    Normalized by n_packets times the path gain at t = 0, so 1.0 means a
    static channel with no combining loss.  When the geometry also moves
    the phase difference (d_y != 0 with a spread array), that drift is
    included: exactly on the exact path, via the slope linearized at t0 on
    the affine path.
    """
    n = scen.n_packets
    tk = scen.packet_times()
    norm = n * pathloss.mean_path_gain(model, geometry.transmitter_distance(scen, 0.0))
    if use_exact:
        w = pathloss.mean_path_gain(model, geometry.transmitter_distance(scen, tk))
        if zero_loss:
            return float(np.sum(w)) / norm
        theta = geometry.omega_exact(scen, tk) - slope * tk
        _, j_min = worst_case_y_scan(w, theta, n_grid)
        return (float(np.sum(w)) + j_min) / norm
    if fit == "taylor":
        pg = affine.taylor_pathgain(model, scen, t0)
    elif fit == "least_squares":
        w = pathloss.mean_path_gain(model, geometry.transmitter_distance(scen, tk))
        pg = affine.least_squares_fit(tk, w)
        affine.require_positive(pg, tk)
    else:
        raise ValueError(f"unknown fit method {fit!r}")
    om = affine.taylor_omega(scen, t0)
    x = 0.5 * (slope - om.slope) * scen.t_interval
    c1, c2 = affine_coefficients(pg.slope, pg.intercept, n, scen.t_interval)
    if zero_loss:
        return c1 * n / norm
    return c1 * n * (1.0 - loss(x, c1, c2, n)) / norm


def sum_snr_phi(slope: float, scen: geometry.ScenarioParams,
                pattern0: antenna.AntennaPattern, pattern1: antenna.AntennaPattern, *,
                use_exact: bool = True, phi0_offset: float | None = None,
                n_grid: int = DEFAULT_Y_GRID, zero_loss: bool = False) -> float:
    """Worst-case sum-SNR with only the angle of arrival varying.

    The burst is normalized by n_packets times the worst-case (over AOA)
    mean branch gain; by default the trajectory is shifted so the first
    packet arrives from exactly that worst-case angle.
    """
    n = scen.n_packets
    tk = scen.packet_times()
    phi_min = antenna.worst_case_aoa(pattern0, pattern1)
    if phi0_offset is None:
        phi0_offset = phi_min - geometry.aoa_exact(scen, 0.0)
    resp = antenna.sample_responses(pattern0, pattern1, scen, phi0_offset)
    half_gain = 0.5 * (resp.mag0 ** 2 + resp.mag1 ** 2)
    norm = n * antenna.combined_mean_gain(pattern0, pattern1, phi_min)
    gain_term = float(np.sum(half_gain))
    if zero_loss:
        return gain_term / norm
    if use_exact:
        w = resp.mag0 * resp.mag1
        theta = (resp.phase0 - resp.phase1) - slope * tk
        _, j_min = worst_case_y_scan(w, theta, n_grid)
        return (gain_term + j_min) / norm
    dphase = affine.fit_antenna_phase_diff(resp)
    product = affine.fit_antenna_gain_product(resp, strict=True)
    x = 0.5 * (slope - dphase.slope) * scen.t_interval
    c1, c2 = affine_coefficients(product.slope, product.intercept, n, scen.t_interval)
    return (gain_term - c1 * n * loss(x, c1, c2, n)) / norm


def sum_snr_combined(slope: float, scen: geometry.ScenarioParams,
                     model: pathloss.PathlossModel,
                     pattern0: antenna.AntennaPattern,
                     pattern1: antenna.AntennaPattern, *,
                     use_exact: bool = True, t0: float | None = None,
                     phi0_offset: float | None = None,
                     snr_scale: float = DESIGN_SNR_SCALE,
                     n_grid: int = DEFAULT_Y_GRID,
                     zero_loss: bool = False) -> float:
    """Worst-case sum-SNR with phase difference, path gain and AOA all varying.

    Unnormalized: the linear sum-SNR scaled by transmit power over noise
    power.  Per-packet weights compose multiplicatively (path gain times
    branch gain product) and phases additively.  The affine path fits each
    factor separately and is an approximation for comparison plots; the
    exact path is the reference.
    """
    n = scen.n_packets
    tk = scen.packet_times()
    phi_min = antenna.worst_case_aoa(pattern0, pattern1)
    if phi0_offset is None:
        phi0_offset = phi_min - geometry.aoa_exact(scen, 0.0)
    resp = antenna.sample_responses(pattern0, pattern1, scen, phi0_offset)
    half_gain = 0.5 * (resp.mag0 ** 2 + resp.mag1 ** 2)
    pl_w = pathloss.mean_path_gain(model, geometry.transmitter_distance(scen, tk))
    if use_exact:
        gain_term = float(np.sum(pl_w * half_gain))
        if zero_loss:
            return snr_scale * gain_term
        w = pl_w * resp.mag0 * resp.mag1
        theta = geometry.omega_exact(scen, tk) + (resp.phase0 - resp.phase1) - slope * tk
        _, j_min = worst_case_y_scan(w, theta, n_grid)
        return snr_scale * (gain_term + j_min)
    om = affine.taylor_omega(scen, t0)
    pg = affine.taylor_pathgain(model, scen, t0)
    dphase = affine.fit_antenna_phase_diff(resp)
    product = affine.fit_antenna_gain_product(resp, strict=True)
    pl_aff = pg(tk)
    gain_term = float(np.sum(pl_aff * half_gain))
    if zero_loss:
        return snr_scale * gain_term
    w = pl_aff * product(tk)
    theta = om(tk) + dphase(tk) - slope * tk
    _, j_min = worst_case_y_scan(w, theta, n_grid)
    return snr_scale * (gain_term + j_min)
