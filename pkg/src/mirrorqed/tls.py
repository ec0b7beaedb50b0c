"""Closed-form two-photon scattering observables for the two-level emitter.

Working variables (gamma, tau, detuning delta, carrier P = e^{i wbar tau}):

  lam    = delta + i gamma
  m(nu)  = 1/(nu + lam - i gamma P e^{i nu tau})          dressed propagator
  p      = sqrt(lam^2 + gamma^2 P^2)                       pole splitting
  d      = 2p cos(p tau) - 2i lam sin(p tau)
  C+-    = +-((+-p - lam) e^{+-i p tau} + i gamma P)/d,  C0 = -1
  G(nu)  = sum_sigma C_sigma (e^{i nu tau} - e^{-i sigma p tau})/(nu + sigma p)
  F(nu)  = i gamma P m(0) G(nu)
  X(nu)  = (m(nu) - m(-nu))/nu + m(nu) F(nu) + m(-nu) F(-nu)

The inelastic two-photon amplitude is

  t_hat(nu) = -4i gamma^2 (1 - cbar)(cos(nu tau) - cbar) m(0) X(nu),

with cbar = Re P = -cos(phi), and the reported spectrum is the
normalization-free combination S~(nu) = gamma^2 |t_hat(nu)|^2 / pi.

p enters only through even combinations, so the sqrt branch is irrelevant.
At p -> 0 (which includes the resonant constructive point phi = 0, delta = 0)
both C+- and d vanish; G is then evaluated through an even/odd regrouping

  G = q_e(p) - 2 a_e(p) (q_o(p)/p)/(d(p)/p) - q(0),
  a_e = i p sin(p tau) - lam cos(p tau) + i gamma P,    (C+ - C-) = 2 a_e/d,

where q(z) = (e^{i nu tau} - e^{i z tau})/(nu - z) and q_o/p is expanded to
second order in p. The identity C+ + C- = 1 removes the odd part exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _stable
from .errors import DegenerateDenominator, PoleProximity, UnsupportedConfiguration
from .params import ModelParams, phase_factor
from .results import SpectralResult

# |p| tau below this uses the regrouped small-p path; above it the direct
# C+- evaluation has at most ~1e-13 relative cancellation loss.
P_SMALL = 1e-2

# Hard error threshold for the C+- denominator away from the p -> 0 point.
DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class TLSContext:
    """Frozen scattering context for one two-level parameter set.

    Only valid away from the p -> 0 degeneracy; the spectrum pipeline
    switches to a series path there instead of building a context.
    """

    lam: complex
    p: complex
    c_plus: complex
    c_minus: complex
    c_zero: complex
    capital_lambda: complex
    carrier: complex  # e^{i wbar tau}
    gamma: float
    tau: float
    delta: float

    def flipped(self) -> "TLSContext":
        """Branch-flipped context (p -> -p swaps C+ and C-); observables must not change."""
        return TLSContext(lam=self.lam, p=-self.p, c_plus=self.c_minus,
                          c_minus=self.c_plus, c_zero=self.c_zero,
                          capital_lambda=self.capital_lambda, carrier=self.carrier,
                          gamma=self.gamma, tau=self.tau, delta=self.delta)


def _core(params: ModelParams):
    emitter = params.require_two_level()
    g = params.gamma
    P = phase_factor(params)
    lam = emitter.delta + 1j * g
    p = np.sqrt(complex(lam * lam + g * g * P * P))
    return g, params.tau, P, lam, p, emitter.delta


def _capital_lambda(g: float, tau: float, P: complex, lam: complex, p: complex) -> complex:
    """Lambda = 1 - i gamma P [C+(1 - e^{-ip tau}) - C-(1 - e^{ip tau})]/p, regrouped.

    The bracket equals 2 a_e (1 - cos p tau)/d + i sin(p tau); dividing by p and
    using (1 - cos x)/x^2 and sin(x)/x keeps it finite at p = 0.
    """
    ae = 1j * p * np.sin(p * tau) - lam * np.cos(p * tau) + 1j * g * P
    d_over_p = 2.0 * np.cos(p * tau) - 2j * lam * tau * _stable.sinc(p * tau)
    bracket_over_p = ae * tau * tau * 2.0 * _stable.cosc(p * tau) / d_over_p \
        + 1j * tau * _stable.sinc(p * tau)
    return 1.0 - 1j * g * P * complex(bracket_over_p)


def build_context(params: ModelParams) -> TLSContext:
    """Assemble lam, p, C+- and Lambda; errors out when the C+- denominator underflows."""
    g, tau, P, lam, p, delta = _core(params)
    d = 2.0 * p * np.cos(p * tau) - 2j * lam * np.sin(p * tau)
    if abs(d) < DENOM_FLOOR * g:
        raise DegenerateDenominator(
            f"C+- denominator |d| = {abs(d):.3e} below {DENOM_FLOOR:.0e}*gamma; "
            "the p -> 0 limit path applies (phi ~ 0 with delta ~ 0, or tau = 0)")
    c_plus = ((p - lam) * np.exp(1j * p * tau) + 1j * g * P) / d
    c_minus = -((-p - lam) * np.exp(-1j * p * tau) + 1j * g * P) / d
    return TLSContext(lam=complex(lam), p=complex(p), c_plus=complex(c_plus),
                      c_minus=complex(c_minus), c_zero=-1.0 + 0j,
                      capital_lambda=_capital_lambda(g, tau, P, lam, p),
                      carrier=complex(P), gamma=g, tau=tau, delta=delta)


def elastic_amplitude(params: ModelParams) -> complex:
    """Single-photon elastic phase s = (lam* + i gamma/P)/(lam - i gamma P); |s| = 1.

    The 0/0 at (delta = 0, phi = pi) is removable; the decoupled emitter
    scatters with s = 1.
    """
    g, _tau, P, lam, _p, delta = _core(params)
    den = lam - 1j * g * P
    if abs(den) < 1e-12 * g:
        return 1.0 + 0j
    return complex((np.conj(lam) + 1j * g * np.conj(P)) / den)


def dressed_green(nu: float, params: ModelParams) -> complex:
    """m(nu) = 1/(nu + lam - i gamma P e^{i nu tau})."""
    g, tau, P, lam, _p, _delta = _core(params)
    den = nu + lam - 1j * g * P * cmath.exp(1j * nu * tau)
    if abs(den) <= 1e-14 * g:
        raise PoleProximity(f"dressed propagator denominator {abs(den):.3e} below 1e-14*gamma")
    return 1.0 / den


def _g_sum_direct(nu, ctx: TLSContext):
    tau = ctx.tau
    q = lambda z: _stable.qdiff(nu, z, tau)
    return ctx.c_plus * q(-ctx.p) + ctx.c_minus * q(ctx.p) + ctx.c_zero * q(0.0)


def _g_sum_small_p(nu, g: float, tau: float, P: complex, lam: complex, p: complex):
    """Regrouped G for |p| tau small; exact at p = 0, O((p tau)^4) near it."""
    q = lambda z: _stable.qdiff(nu, z, tau)
    q_e = 0.5 * (q(p) + q(-p))
    E = np.exp(1j * np.asarray(nu, dtype=complex) * tau)
    w0 = -1j * np.asarray(nu, dtype=complex) * tau
    q_odd_over_p = -tau * tau * E * _stable.phi1p(w0) \
        + (p * p / 6.0) * tau ** 4 * E * _stable.phi1ppp(w0)
    ae = 1j * p * np.sin(p * tau) - lam * np.cos(p * tau) + 1j * g * P
    d_over_p = 2.0 * np.cos(p * tau) - 2j * lam * tau * _stable.sinc(p * tau)
    return q_e - 2.0 * ae * q_odd_over_p / d_over_p - q(0.0)


def g_sum(nu, params: ModelParams, ctx: TLSContext | None = None):
    """G(nu) = sum_sigma C_sigma (e^{i nu tau} - e^{-i sigma p tau})/(nu + sigma p).

    Vectorized over nu. Dispatches to the regrouped path near p = 0; raises
    DegenerateDenominator if d underflows away from that point.
    """
    g, tau, P, lam, p, _delta = _core(params)
    if tau == 0.0:
        return np.zeros_like(np.asarray(nu, dtype=complex))
    if ctx is not None:
        return _g_sum_direct(nu, ctx)
    if abs(p) * tau < P_SMALL:
        return _g_sum_small_p(nu, g, tau, P, lam, p)
    return _g_sum_direct(nu, build_context(params))


def f_function(nu, ctx: TLSContext, params: ModelParams):
    """F(nu) = i gamma P m(0) G(nu), using an explicit (possibly branch-flipped) context."""
    g = params.gamma
    P = ctx.carrier
    m0 = 1.0 / (ctx.lam - 1j * g * P)
    return 1j * g * P * m0 * g_sum(nu, params, ctx=ctx)


def _f_of(nu, params: ModelParams):
    g, _tau, P, lam, _p, _delta = _core(params)
    m0 = 1.0 / (lam - 1j * g * P)
    return 1j * g * P * m0 * g_sum(nu, params)


def t_hat(nu, params: ModelParams):
    """Inelastic two-photon amplitude t_hat(nu); S_inel = (c/L)^2 |t_hat|^2 / pi.

    Even in nu and finite on the whole real axis.
    """
    g, tau, P, lam, _p, _delta = _core(params)
    nu = np.asarray(nu, dtype=float)
    D = lambda x: x + lam - 1j * g * P * np.exp(1j * x * tau)
    Dn, Dm = D(nu), D(-nu)
    if np.any(np.abs(Dn) <= 1e-14 * g) or np.any(np.abs(Dm) <= 1e-14 * g):
        raise PoleProximity("dressed propagator pole on the requested frequency grid")
    # (m(nu) - m(-nu))/nu = -2 (1 + gamma P tau sinc(nu tau)) / (D(nu) D(-nu))
    sym = -2.0 * (1.0 + g * P * tau * _stable.sinc(nu * tau)) / (Dn * Dm)
    fv = _f_of(nu, params)
    fm = _f_of(-nu, params)
    X = sym + fv / Dn + fm / Dm
    cbar = -math.cos(params.phi)
    m0 = 1.0 / (lam - 1j * g * P)
    return -4j * g * g * (1.0 - cbar) * (np.cos(nu * tau) - cbar) * m0 * X


def inelastic_spectrum(grid, params: ModelParams) -> SpectralResult:
    """S~(nu) = S_inel(nu) (gamma T)^2 with c/L = 1/T, on the given frequency grid."""
    params.require_two_level()
    grid = np.asarray(grid, dtype=float)
    th = t_hat(grid, params)
    stilde = params.gamma ** 2 * np.abs(th) ** 2 / math.pi
    return SpectralResult(grid=grid, inelastic=stilde,
                          meta={"engine": "analytic-tls", "phi": params.phi,
                                "gamma_tau": params.gamma * params.tau})


def elastic_weight(params: ModelParams, gamma_t: float) -> float:
    """Coefficient of delta(nu) in the output spectrum, for wavepacket duration T.

    Evaluated as 2/T - (4/T^2) * 8 gamma^2 (1-cbar)^2 Im[(s*)^2 Lambda m(0)^3].
    The decoupled point phi = pi gives exactly 2/T.

    The coefficient 8 (not 16) is fixed by photon-number conservation against
    the inelastic channel and by the independent identity
    Re[(s*)^2 t_hat(0)] = -8 gamma^2 (1-cbar)^2 Im[(s*)^2 Lambda m(0)^3],
    which tests enforce.
    """
    g, tau, P, lam, p, _delta = _core(params)
    if gamma_t <= 0.0:
        raise UnsupportedConfiguration("gamma_t must be positive")
    T = gamma_t / g
    cbar = -math.cos(params.phi)
    if abs(1.0 - cbar) < 1e-300:
        return 2.0 / T
    m0 = 1.0 / (lam - 1j * g * P)
    lam_cap = _capital_lambda(g, tau, P, lam, p)
    s = elastic_amplitude(params)
    deficit = 8.0 * g * g * (1.0 - cbar) ** 2 * (np.conj(s) ** 2 * lam_cap * m0 ** 3).imag
    return 2.0 / T - (4.0 / T ** 2) * float(deficit)


def closed_form_phi0(nu, params: ModelParams, gamma_t: float | None = None):
    """Printed resonant-constructive closed form of S~(nu); requires phi = 0, delta = 0.

    gamma_t is accepted for interface symmetry but does not enter: the returned
    S~ = S_inel (gamma T)^2 is already T-free.
    """
    emitter = params.require_two_level()
    if params.phi != 0.0 or emitter.delta != 0.0:
        raise UnsupportedConfiguration("closed form valid at phi = 0, delta = 0 only")
    g, tau = params.gamma, params.tau
    nu = np.asarray(nu, dtype=float)
    gt = g * tau
    x = nu / g
    val = (8.0 / (math.sqrt(math.pi) * (1.0 + gt))) * (1.0 + np.cos(nu * tau)) \
        / ((x - np.sin(nu * tau)) ** 2 + (1.0 + np.cos(nu * tau)) ** 2)
    return val * val


def markov_limit_spectrum(nu, params: ModelParams):
    """S~(nu) in the gamma*tau -> 0 limit, from the effective-parameter Lorentzians.

    Includes the overall gamma^2 restoring dimensional consistency; validated
    against the full pipeline at gamma*tau = 1e-4.
    """
    from .params import markov_effective
    eff = markov_effective(params)
    nu = np.asarray(nu, dtype=float)
    g = params.gamma
    hw2 = eff.gamma_eff ** 2 / 4.0
    if hw2 == 0.0:
        return np.zeros_like(nu)
    return (64.0 / math.pi) * g * g * hw2 ** 2 / (
        (eff.delta_eff ** 2 + hw2)
        * (((nu + eff.delta_eff) ** 2 + hw2) * ((nu - eff.delta_eff) ** 2 + hw2)))
