"""Exception types shared across the analytic and MPS engines."""

from __future__ import annotations


class MirrorQEDError(Exception):
    """Base class for all package errors."""


class ConfigInvalid(MirrorQEDError):
    """A parameter or engine configuration violates its invariants."""


class UnsupportedConfiguration(MirrorQEDError):
    """The requested configuration is outside the supported analytic domain."""


class DegenerateDenominator(MirrorQEDError):
    """The C+- denominator of the two-level context underflowed at finite p."""


class PoleProximity(MirrorQEDError):
    """A dressed-propagator denominator is too close to zero to evaluate."""


class QuadratureNotConverged(MirrorQEDError):
    """Successive quadrature refinements disagree above tolerance."""


class OverflowFlagged(MirrorQEDError):
    """A correlation-series term exceeded the overflow guard before cancellation."""


class TruncationBudgetExceeded(MirrorQEDError):
    """Discarded weight in a single evolution step exceeded the configured budget."""


class WindowOutOfRange(MirrorQEDError):
    """An observable window refers to bins outside the fully scattered region."""


class WindowTooShort(MirrorQEDError):
    """The correlation window ends before the connected part has decayed."""


class IntensityFloor(MirrorQEDError):
    """An intensity in a correlation denominator fell below the safe floor."""


class PeakNotFound(MirrorQEDError):
    """No usable spectral peak was found for a fit-based check."""


class GridMismatch(MirrorQEDError):
    """Two spectra live on grids with disjoint ranges."""


class EngineError(MirrorQEDError):
    """Wrapper for failures raised while running a configured engine job."""


class ConfigParse(MirrorQEDError):
    """The run configuration file could not be parsed or validated."""
