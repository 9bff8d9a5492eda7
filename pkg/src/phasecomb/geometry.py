"""Line-of-sight geometry between a moving transmitter and a two-antenna array.

The receiving vehicle is the origin of the frame.  The transmitter sits at
(d_x, d_y) at t = 0 and slides along +x with the relative speed delta_v, so
its position at time t is (d_x + delta_v * t, d_y).  The two receive
antennas are mounted on the lateral axis, antenna 0 at y = -delta_a / 2 and
antenna 1 at y = +delta_a / 2.

Units are SI throughout: meters, seconds, m/s, radians.  Speeds quoted in
km/h are converted at the interface (CLI flags, demo scripts), never inside
the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DegenerateGeometry

TWO_PI = 2.0 * math.pi


def kmh_to_mps(speed_kmh: float) -> float:
    """Convert a speed from km/h to m/s."""
    return speed_kmh * (1000.0 / 3600.0)


def carrier_wavelength(carrier_hz: float) -> float:
    """Free-space wavelength in meters for a carrier frequency in Hz."""
    if carrier_hz <= 0.0:
        raise ValueError("carrier frequency must be positive")
    return SPEED_OF_LIGHT / carrier_hz


@dataclass(frozen=True)
class ScenarioParams:
    """Broadcast scenario: constant-velocity geometry plus burst timing.

    A burst of n_packets packets is received t_interval seconds apart;
    packet k arrives at t = k * t_interval, k = 0 .. n_packets - 1.
    """

    d_x: float
    d_y: float
    delta_v: float      # relative speed along x, m/s
    delta_a: float      # antenna separation, m
    wavelength: float   # carrier wavelength, m
    n_packets: int = 10
    t_interval: float = 0.1

    def __post_init__(self) -> None:
        if self.n_packets < 2:
            raise ValueError("a burst needs at least two packets")
        if self.t_interval <= 0.0:
            raise ValueError("packet interval must be positive")
        if self.wavelength <= 0.0:
            raise ValueError("wavelength must be positive")
        if self.delta_a < 0.0:
            raise ValueError("antenna separation cannot be negative")

    @property
    def burst_window(self) -> float:
        """Time of the last packet, (n_packets - 1) * t_interval."""
        return (self.n_packets - 1) * self.t_interval

    def packet_times(self) -> np.ndarray:
        return np.arange(self.n_packets) * self.t_interval

    def time_grid(self, steps_per_interval: int = 10) -> np.ndarray:
        """Dense time grid spanning the burst, default step t_interval / 10."""
        n = (self.n_packets - 1) * steps_per_interval
        return np.linspace(0.0, self.burst_window, n + 1)


def transmitter_distance(scen: ScenarioParams, t):
    """Distance from the array center to the transmitter at time t."""
    u = scen.d_x + scen.delta_v * np.asarray(t, dtype=float)
    d = np.hypot(u, scen.d_y)
    return float(d) if np.ndim(t) == 0 else d


def propagation_distances(scen: ScenarioParams, t):
    """Distances (d_0, d_1) from the transmitter to the two antennas at time t.

    Antenna 0 sits at lateral offset -delta_a / 2, antenna 1 at +delta_a / 2.
    """
    u = scen.d_x + scen.delta_v * np.asarray(t, dtype=float)
    half = 0.5 * scen.delta_a
    d0 = np.hypot(u, scen.d_y + half)
    d1 = np.hypot(u, scen.d_y - half)
    if np.any(d0 == 0.0) or np.any(d1 == 0.0):
        raise DegenerateGeometry("transmitter coincides with a receive antenna")
    if np.ndim(t) == 0:
        return float(d0), float(d1)
    return d0, d1


def omega_exact(scen: ScenarioParams, t):
    """Dominant-path phase difference between the two branches at time t.

    2 pi / wavelength times the propagation distance difference d_1 - d_0.
    Antisymmetric in d_y and identically zero for delta_a = 0.
    """
    d0, d1 = propagation_distances(scen, t)
    out = (TWO_PI / scen.wavelength) * (d1 - d0)
    return float(out) if np.ndim(t) == 0 else out


def aoa_exact(scen: ScenarioParams, t):
    """Angle of arrival at the array center, wrapped to [0, 2 pi).

    Zero azimuth points along +x (the direction of relative motion).
    """
    u = scen.d_x + scen.delta_v * np.asarray(t, dtype=float)
    if np.any((u == 0.0) & (scen.d_y == 0.0)):
        raise DegenerateGeometry("transmitter crosses the array center")
    phi = np.mod(np.arctan2(scen.d_y, u), TWO_PI)
    return float(phi) if np.ndim(t) == 0 else phi
