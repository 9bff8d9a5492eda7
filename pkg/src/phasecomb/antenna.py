"""Azimuth antenna patterns: tabulated complex branch responses vs AOA.

A pattern stores the field magnitude |g| and the phase of g on a strictly
increasing azimuth grid in [0, 2 pi) and is evaluated by periodic linear
interpolation (magnitude and unwrapped phase separately).  The CSV exchange
format is one header row ``azimuth_deg,gain_dbi,phase_deg`` followed by
numeric rows; gain_dbi tabulates |g|^2 in dBi, so |g| = 10^(dBi/20).
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from functools import cached_property
from importlib import resources

import numpy as np
from scipy.optimize import minimize_scalar

from . import geometry
from .errors import EmptyPattern, MalformedRow, NonMonotonicAzimuth

TWO_PI = 2.0 * math.pi

PATTERN_HEADER = ("azimuth_deg", "gain_dbi", "phase_deg")


@dataclass(frozen=True, eq=False)
class AntennaPattern:
    """Tabulated azimuth response: strictly increasing grid, linear |g|, phase.

    phase is stored unwrapped along the grid; the wraparound segment between
    the last and (periodically repeated) first sample keeps the accumulated
    winding, so interpolated phase is continuous everywhere.
    """

    azimuth: np.ndarray    # radians in [0, 2 pi), strictly increasing
    magnitude: np.ndarray  # linear field magnitude, >= 0
    phase: np.ndarray      # radians, unwrapped along the grid

    def __post_init__(self) -> None:
        az = np.asarray(self.azimuth, dtype=float)
        mag = np.asarray(self.magnitude, dtype=float)
        ph = np.asarray(self.phase, dtype=float)
        if az.size == 0:
            raise EmptyPattern("pattern has no samples")
        if az.shape != mag.shape or az.shape != ph.shape:
            raise ValueError("azimuth, magnitude and phase must have equal length")
        if np.any(az < 0.0) or np.any(az >= TWO_PI):
            raise ValueError("azimuth grid must lie in [0, 2 pi)")
        if az.size > 1 and np.any(np.diff(az) <= 0.0):
            raise NonMonotonicAzimuth("azimuth grid must be strictly increasing")
        if np.any(mag < 0.0):
            raise ValueError("field magnitude cannot be negative")
        if not (np.all(np.isfinite(az)) and np.all(np.isfinite(mag))
                and np.all(np.isfinite(ph))):
            raise ValueError("pattern samples must be finite")
        object.__setattr__(self, "azimuth", az)
        object.__setattr__(self, "magnitude", mag)
        object.__setattr__(self, "phase", ph)

    @cached_property
    def _extended(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        # Close the grid periodically; the repeated first sample carries the
        # integer phase winding closest to the tabulated endpoint.
        az = np.append(self.azimuth, self.azimuth[0] + TWO_PI)
        mag = np.append(self.magnitude, self.magnitude[0])
        if self.azimuth.size > 1:
            winding = round(float(self.phase[-1] - self.phase[0]) / TWO_PI)
        else:
            winding = 0
        ph = np.append(self.phase, self.phase[0] + winding * TWO_PI)
        return az, mag, ph

    def evaluate(self, phi):
        """Interpolated (magnitude, phase) at azimuth phi, periodic in 2 pi."""
        az, mag, ph = self._extended
        p = np.mod(np.asarray(phi, dtype=float) - az[0], TWO_PI) + az[0]
        m = np.interp(p, az, mag)
        f = np.interp(p, az, ph)
        if np.ndim(phi) == 0:
            return float(m), float(f)
        return m, f


def combined_mean_gain(pattern0: AntennaPattern, pattern1: AntennaPattern, phi):
    """Mean of the two branch power gains at AOA phi: (|g0|^2 + |g1|^2) / 2."""
    m0, _ = pattern0.evaluate(phi)
    m1, _ = pattern1.evaluate(phi)
    return 0.5 * (m0 ** 2 + m1 ** 2)


def worst_case_aoa(pattern0: AntennaPattern, pattern1: AntennaPattern,
                   grid_step_deg: float = 0.05) -> float:
    """AOA minimizing the combined mean gain, in [0, 2 pi).

    Dense grid scan followed by a bounded local refinement; exact ties keep
    the smallest angle (the refinement is only accepted when it strictly
    improves on the grid).
    """
    n = int(round(360.0 / grid_step_deg))
    grid = np.arange(n) * (TWO_PI / n)
    vals = combined_mean_gain(pattern0, pattern1, grid)
    i = int(np.argmin(vals))
    step = TWO_PI / n

    def objective(phi: float) -> float:
        return combined_mean_gain(pattern0, pattern1, phi)

    res = minimize_scalar(objective, bounds=(grid[i] - step, grid[i] + step),
                          method="bounded", options={"xatol": 1e-12})
    if res.fun < vals[i]:
        return float(np.mod(res.x, TWO_PI))
    return float(grid[i])


@dataclass(frozen=True, eq=False)
class BurstResponses:
    """Per-packet branch responses sampled along an AOA trajectory."""

    times: np.ndarray
    aoa: np.ndarray
    mag0: np.ndarray
    phase0: np.ndarray
    mag1: np.ndarray
    phase1: np.ndarray


def sample_responses(pattern0: AntennaPattern, pattern1: AntennaPattern,
                     scen: geometry.ScenarioParams,
                     phi0_offset: float = 0.0) -> BurstResponses:
    """Evaluate both branch patterns at every packet time of the scenario.

    phi0_offset rotates the whole AOA trajectory; passing
    worst_case_aoa(...) - aoa_exact(scen, 0) starts the burst at the
    worst-case angle.
    """
    tk = scen.packet_times()
    phi = np.mod(geometry.aoa_exact(scen, tk) + phi0_offset, TWO_PI)
    m0, p0 = pattern0.evaluate(phi)
    m1, p1 = pattern1.evaluate(phi)
    return BurstResponses(times=tk, aoa=phi, mag0=m0, phase0=p0, mag1=m1, phase1=p1)


# ---------------------------------------------------------------------------
# CSV exchange format
# ---------------------------------------------------------------------------

def load_pattern_csv(path: str | os.PathLike) -> AntennaPattern:
    """Read a pattern from CSV (header azimuth_deg,gain_dbi,phase_deg).

    Azimuth must be strictly increasing within [0, 360); gain_dbi is |g|^2
    in dBi; phase is unwrapped after conversion to radians.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return _parse_pattern_rows(csv.reader(fh), str(path))


def _parse_pattern_rows(reader, origin: str) -> AntennaPattern:
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyPattern(f"{origin}: no header row") from None
    if tuple(h.strip().lower() for h in header) != PATTERN_HEADER:
        raise MalformedRow(f"{origin}: header must be {','.join(PATTERN_HEADER)}")
    az_deg, gain_dbi, phase_deg = [], [], []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 3:
            raise MalformedRow(f"{origin}:{lineno}: expected 3 fields, got {len(row)}")
        try:
            a, g, p = (float(field) for field in row)
        except ValueError:
            raise MalformedRow(f"{origin}:{lineno}: non-numeric field") from None
        if not 0.0 <= a < 360.0:
            raise MalformedRow(f"{origin}:{lineno}: azimuth {a!r} outside [0, 360)")
        az_deg.append(a)
        gain_dbi.append(g)
        phase_deg.append(p)
    if not az_deg:
        raise EmptyPattern(f"{origin}: no data rows")
    az = np.asarray(az_deg)
    if az.size > 1 and np.any(np.diff(az) <= 0.0):
        raise NonMonotonicAzimuth(f"{origin}: azimuth must be strictly increasing")
    magnitude = 10.0 ** (np.asarray(gain_dbi) / 20.0)
    phase = np.unwrap(np.radians(phase_deg))
    return AntennaPattern(azimuth=np.radians(az), magnitude=magnitude, phase=phase)


def save_pattern_csv(pattern: AntennaPattern, path: str | os.PathLike) -> None:
    """Write a pattern in the CSV exchange format (phase wrapped to (-180, 180])."""
    az_deg = np.degrees(pattern.azimuth)
    gain_dbi = 20.0 * np.log10(np.maximum(pattern.magnitude, 1e-30))
    phase_deg = -(np.mod(-np.degrees(pattern.phase) + 180.0, 360.0) - 180.0)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PATTERN_HEADER)
        for a, g, p in zip(az_deg, gain_dbi, phase_deg):
            writer.writerow([f"{a:.6g}", f"{g:.10g}", f"{p:.10g}"])


# ---------------------------------------------------------------------------
# Synthetic patterns
# ---------------------------------------------------------------------------

def isotropic_pattern(n_points: int = 360) -> AntennaPattern:
    """Unit gain and zero phase at every azimuth."""
    az = np.arange(n_points) * (TWO_PI / n_points)
    return AntennaPattern(azimuth=az, magnitude=np.ones(n_points),
                          phase=np.zeros(n_points))


def single_lobe_pattern(boresight_deg: float, *, front_dbi: float = 6.0,
                        back_dbi: float = -10.0,
                        phase_center_offset_m: float = 0.0,
                        wavelength: float | None = None,
                        n_points: int = 360) -> AntennaPattern:
    """Smooth one-lobe pattern with an optional displaced phase center.

    Power gain in dBi swings cosinusoidally between front_dbi at boresight
    and back_dbi opposite it.  A phase center displaced by
    phase_center_offset_m along boresight adds the phase
    -(2 pi offset / wavelength) * cos(phi - boresight).
    """
    az = np.arange(n_points) * (TWO_PI / n_points)
    rel = az - math.radians(boresight_deg)
    mid = 0.5 * (front_dbi + back_dbi)
    half = 0.5 * (front_dbi - back_dbi)
    gain_dbi = mid + half * np.cos(rel)
    if phase_center_offset_m != 0.0:
        if wavelength is None or wavelength <= 0.0:
            raise ValueError("phase center offset needs a positive wavelength")
        phase = -(TWO_PI * phase_center_offset_m / wavelength) * np.cos(rel)
    else:
        phase = np.zeros(n_points)
    return AntennaPattern(azimuth=az, magnitude=10.0 ** (gain_dbi / 20.0),
                          phase=phase)


def cardioid_pattern(boresight_deg: float = 0.0, *, front_dbi: float = 6.0,
                     n_points: int = 360) -> AntennaPattern:
    """Classic heart-shaped lobe with a deep rear null (40 dB below boresight)."""
    return single_lobe_pattern(boresight_deg, front_dbi=front_dbi,
                               back_dbi=front_dbi - 40.0, n_points=n_points)


def patch_pair_patterns(wavelength: float,
                        phase_center_offset_m: float = 0.03,
                        n_points: int = 360) -> tuple[AntennaPattern, AntennaPattern]:
    """Back-to-back roof patches: lobes at 0 and 180 deg, +6 to -10 dBi,
    phase centers displaced toward their respective boresights."""
    front = single_lobe_pattern(0.0, front_dbi=6.0, back_dbi=-10.0,
                                phase_center_offset_m=phase_center_offset_m,
                                wavelength=wavelength, n_points=n_points)
    rear = single_lobe_pattern(180.0, front_dbi=6.0, back_dbi=-10.0,
                               phase_center_offset_m=phase_center_offset_m,
                               wavelength=wavelength, n_points=n_points)
    return front, rear


def builtin_pattern(name: str) -> AntennaPattern:
    """Load one of the patterns shipped with the package by bare name.

    Available: isotropic, cardioid, patch_front, patch_rear.
    """
    resource = resources.files("phasecomb").joinpath("patterns", f"{name}.csv")
    if not resource.is_file():
        raise FileNotFoundError(f"no builtin pattern named {name!r}")
    with resources.as_file(resource) as path:
        return load_pattern_csv(path)
