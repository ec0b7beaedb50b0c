"""Physical parameters and phase conventions shared by both engines.

The emitter sits at a distance d from the mirror; a photon picks up the
roundtrip phase phi = wbar*tau + pi (mod 2pi), where tau = 2d/c is the
roundtrip delay and wbar the rotating-frame (incident photon) frequency.
Only (gamma, tau, phi, detunings) enter any observable, so wbar is never
stored; the carrier factor e^{i wbar tau} is reconstructed as -e^{i phi}.

Incident photons sit at nu = 0 in the rotating frame.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConfigInvalid, UnsupportedConfiguration

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TwoLevel:
    """Two-level emitter; both propagation directions couple to |g><e|."""

    delta: float = 0.0


@dataclass(frozen=True)
class ChiralV:
    """V-level emitter with chiral coupling.

    Transition 1 couples to mirror-bound photons, transition 2 to outgoing
    ones. Each transition decays at rate gamma (no mirror).
    """

    delta1: float = 0.0
    delta2: float = 0.0

    @property
    def equal_detunings(self) -> bool:
        return self.delta1 == self.delta2


EmitterKind = TwoLevel | ChiralV


@dataclass(frozen=True)
class ModelParams:
    """Model configuration: emitter, decay rate, delay and feedback phase.

    gamma and the detunings are in the same frequency unit; tau is in the
    inverse unit. phi is stored reduced to [0, 2pi).
    """

    emitter: EmitterKind
    gamma: float
    tau: float
    phi: float

    def __post_init__(self) -> None:
        if self.gamma <= 0.0:
            raise ConfigInvalid(f"gamma must be positive, got {self.gamma}")
        if self.tau < 0.0:
            raise ConfigInvalid(f"tau must be nonnegative, got {self.tau}")
        if not isinstance(self.emitter, (TwoLevel, ChiralV)):
            raise ConfigInvalid(f"unknown emitter kind {self.emitter!r}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)

    @property
    def is_two_level(self) -> bool:
        return isinstance(self.emitter, TwoLevel)

    def require_two_level(self) -> TwoLevel:
        if not isinstance(self.emitter, TwoLevel):
            raise UnsupportedConfiguration("operation defined for the two-level emitter only")
        return self.emitter

    def require_chiral_v(self) -> ChiralV:
        if not isinstance(self.emitter, ChiralV):
            raise UnsupportedConfiguration("operation defined for the chiral V emitter only")
        return self.emitter

    def with_phi(self, phi: float) -> "ModelParams":
        return ModelParams(self.emitter, self.gamma, self.tau, phi)


def phase_factor(params: ModelParams) -> complex:
    """Roundtrip carrier factor e^{i wbar tau} = -e^{i phi}; unit modulus."""
    return -cmath.exp(1j * params.phi)


@dataclass(frozen=True)
class MarkovEffectiveParams:
    """Mirror-renormalized emitter parameters in the short-delay limit."""

    delta_eff: float
    gamma_eff: float


def markov_effective(params: ModelParams) -> MarkovEffectiveParams:
    """Effective detuning and decay of the two-level emitter for gamma*tau -> 0.

    delta_eff = delta - gamma sin(phi); gamma_eff = 4 gamma cos^2(phi/2).
    At phi = pi the emitter decouples from the waveguide (gamma_eff = 0).
    """
    emitter = params.require_two_level()
    delta_eff = emitter.delta - params.gamma * math.sin(params.phi)
    gamma_eff = 4.0 * params.gamma * math.cos(params.phi / 2.0) ** 2
    return MarkovEffectiveParams(delta_eff=delta_eff, gamma_eff=gamma_eff)
