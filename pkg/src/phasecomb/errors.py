"""Exception types shared across the package."""


class PhasecombError(Exception):
    """Base class for all library-specific failures."""


class DegenerateGeometry(PhasecombError):
    """Scenario geometry collapses (transmitter on the array, vanishing radical)."""


class NonPositiveDistance(PhasecombError):
    """Path gain queried at a distance <= 0."""


class EmptyPattern(PhasecombError):
    """Antenna pattern holds no samples."""


class MalformedRow(PhasecombError):
    """Antenna pattern CSV row or header failed to parse."""


class NonMonotonicAzimuth(PhasecombError):
    """Antenna pattern azimuth grid is not strictly increasing."""


class DegenerateSamples(PhasecombError):
    """Affine fit requested on fewer than two distinct sample times."""


class ValidityViolation(PhasecombError):
    """Scenario leaves the range where the pathloss model may be linearized."""


class PositivityViolation(PhasecombError):
    """Affine per-packet weights are not strictly positive over the burst."""


class DomainX(PhasecombError):
    """Kernel evaluated within tolerance of a pole of 1/sin (x in the severe set)."""


class NonPositiveC1(PhasecombError):
    """Mean per-packet weight c1 must be strictly positive."""
