"""Result containers shared between the analytic engine, the MPS engine and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class SpectralResult:
    """Inelastic power spectrum on a frequency grid, plus the elastic delta weight.

    ``inelastic`` holds S~(nu) = S_inel(nu) * (gamma*T)^2 with c/L = 1/T, which is
    independent of the wavepacket normalization length. ``elastic_weight`` is the
    coefficient of delta(nu) (same frequency units as the grid), or ``None`` when
    the producing engine did not evaluate it.
    """

    grid: np.ndarray
    inelastic: np.ndarray
    elastic_weight: float | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.grid = np.asarray(self.grid, dtype=float)
        self.inelastic = np.asarray(self.inelastic, dtype=float)
        if self.grid.shape != self.inelastic.shape:
            raise ValueError("grid and inelastic arrays must have matching shapes")

    @property
    def peak(self) -> float:
        return float(np.max(self.inelastic)) if self.inelastic.size else 0.0


@dataclass
class CorrelationResult:
    """Normalized second-order correlation g2 on a time grid.

    ``delay_marks`` are grid indices closest to integer multiples of the delay,
    where the analytic g2 is allowed a derivative kink. ``flagged`` lists
    indices where the producing engine could not form a trustworthy ratio.
    """

    grid: np.ndarray
    values: np.ndarray
    delay_marks: list[int] = field(default_factory=list)
    flagged: list[int] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values arrays must have matching shapes")


@dataclass
class ComparisonReport:
    """Outcome of one validation comparison."""

    name: str
    metric: str  # "relative-L2" | "max-abs" | "pointwise"
    value: float
    tolerance: float
    passed: bool
    metadata: dict[str, Any] = field(default_factory=dict)

    @staticmethod
    def from_value(name: str, metric: str, value: float, tolerance: float,
                   **metadata: Any) -> "ComparisonReport":
        return ComparisonReport(name=name, metric=metric, value=float(value),
                                tolerance=float(tolerance),
                                passed=bool(value <= tolerance), metadata=dict(metadata))

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "metric": self.metric,
            "value": self.value,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "metadata": self.metadata,
        }
