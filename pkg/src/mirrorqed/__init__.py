"""mirrorqed: photon scattering from an emitter coupled to a mirror-terminated waveguide.

Two engines over one parameter set:

* a closed-form scattering engine for two-photon observables (``tls``,
  ``tls_correlation``, ``vlevel``, with the ``wbar`` integral-equation oracle), and
* a time-bin matrix-product-state engine evolving emitter plus field
  (``mps``), with observable extraction and checkpointing.

``validation`` cross-checks the two; ``cli`` drives configured runs that emit
plot-ready CSV data.
"""

from .errors import (
    ConfigInvalid,
    ConfigParse,
    DegenerateDenominator,
    EngineError,
    GridMismatch,
    IntensityFloor,
    MirrorQEDError,
    OverflowFlagged,
    PeakNotFound,
    PoleProximity,
    QuadratureNotConverged,
    TruncationBudgetExceeded,
    UnsupportedConfiguration,
    WindowOutOfRange,
    WindowTooShort,
)
from .params import (
    ChiralV,
    MarkovEffectiveParams,
    ModelParams,
    TwoLevel,
    markov_effective,
    phase_factor,
)
from .results import ComparisonReport, CorrelationResult, SpectralResult
from . import tls, tls_correlation, vlevel, wbar

__all__ = [
    "ChiralV",
    "ComparisonReport",
    "ConfigInvalid",
    "ConfigParse",
    "CorrelationResult",
    "DegenerateDenominator",
    "EngineError",
    "GridMismatch",
    "IntensityFloor",
    "MarkovEffectiveParams",
    "MirrorQEDError",
    "ModelParams",
    "OverflowFlagged",
    "PeakNotFound",
    "PoleProximity",
    "QuadratureNotConverged",
    "SpectralResult",
    "TruncationBudgetExceeded",
    "TwoLevel",
    "UnsupportedConfiguration",
    "WindowOutOfRange",
    "WindowTooShort",
    "markov_effective",
    "phase_factor",
    "tls",
    "tls_correlation",
    "vlevel",
    "wbar",
]
