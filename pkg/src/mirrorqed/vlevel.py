"""Closed-form two-photon scattering observables for the chiral V-level emitter.

With lam_chi = delta_chi + i gamma/2, the chiral coupling terminates the
pair-propagator recursion after three iterations, so the inelastic amplitude is
assembled exactly from

  F1^(chi)(nu) = -(2 pi i/lam_chi) [ (e^{i nu tau} - e^{i lam_chi tau})/(nu - lam_chi)
                                     - (e^{i nu tau} - 1)/nu ]
  F2(nu)       = 4 pi^2/(lam1 (nu - lam2)) [ (e^{i(nu+lam1)tau} - 1)/(nu + lam1)
                                             - (e^{i(lam1+lam2)tau} - 1)/(lam1 + lam2)
                                             - (e^{i nu tau} - 1)/nu
                                             + (e^{i lam2 tau} - 1)/lam2 ]

sandwiched between the dressed propagator and the bare vertices on the
excited-state doublet. (The second bracket of F1 carries e^{i nu tau}; the
three-iteration quadrature oracle in the tests pins this reading down.)

The sandwich form is regular at lam1 = lam2, which is the supported analytic
configuration; the roundtrip carrier phase cancels identically, reflecting the
gauge freedom of the chiral setup. The only singular structure is the explicit
1/nu of the first recursion term, removed by symmetrizing t(nu) over +-nu; for
|nu| under the stencil threshold the even amplitude is extended quadratically
from two safely evaluated points.

g2 uses the closed cosine transform of t_hat at equal detunings:

  K(t) = (g^2/lam^3)(lam - g delta t) e^{i lam t} + (2g/lam) B2 e^{i lam t}
         + Theta(t - tau) (g^2/lam^2) A0 (1 - g(t - tau) - i g/(2 lam)) e^{i lam (t-tau)}
         + (g^2 delta/lam^3) A0 [ e^{i lam (t+tau)} + Theta(tau - t) e^{i lam (tau-t)} ]

  A0 = (lam* + (i g/2) e^{i lam tau})/lam
  B2 = g lam*^2/(2 lam^3) - i g^2/(2 lam^2) + (i g^2/(2 lam^2)) e^{i lam tau} A0

and g2(t) = 1/2 |1 + K(t)/s^2|^2. Theta(0) = 1/2 at the boundary t = tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._stable import phi1, qdiff
from .errors import UnsupportedConfiguration
from .params import ChiralV, ModelParams
from .results import CorrelationResult, SpectralResult


@dataclass(frozen=True)
class VContext:
    lam1: complex
    lam2: complex


def build_context_v(params: ModelParams) -> VContext:
    emitter = params.require_chiral_v()
    half = 0.5j * params.gamma
    return VContext(lam1=emitter.delta1 + half, lam2=emitter.delta2 + half)


def elastic_amplitude_v(params: ModelParams) -> complex:
    """s = lam1* lam2* / (lam1 lam2); unimodular since Im lam_chi = gamma/2 > 0."""
    ctx = build_context_v(params)
    return complex(np.conj(ctx.lam1) * np.conj(ctx.lam2) / (ctx.lam1 * ctx.lam2))


def f1(nu, chi: int, params: ModelParams):
    """Second-iteration kernel F1^(chi); removable points at nu = 0 and nu = lam_chi."""
    ctx = build_context_v(params)
    if chi not in (1, 2):
        raise ValueError("chi must be 1 or 2")
    lam = ctx.lam1 if chi == 1 else ctx.lam2
    tau = params.tau
    return -(2j * np.pi / lam) * (qdiff(nu, lam, tau) - qdiff(nu, 0.0, tau))


def f2(nu, params: ModelParams):
    """Third-iteration kernel F2; removable points at nu = 0 and nu = -lam1."""
    ctx = build_context_v(params)
    tau = params.tau
    l1, l2 = ctx.lam1, ctx.lam2
    nu = np.asarray(nu, dtype=complex)
    bracket = (1j * tau * phi1(1j * (nu + l1) * tau)
               - 1j * tau * phi1(1j * (l1 + l2) * tau)
               - 1j * tau * phi1(1j * nu * tau)
               + 1j * tau * phi1(1j * l2 * tau))
    return (4.0 * np.pi ** 2 / (l1 * (nu - l2))) * bracket


def _t_amp(nu, params: ModelParams):
    """Unsymmetrized t(nu) from the three-iteration kernel sandwich.

    Valid for any detuning pair; carries an explicit 1/nu pole. Vectorized.
    The carrier phase drops out, so it is evaluated at wbar*tau = 0.
    """
    emitter = params.require_chiral_v()
    g = params.gamma
    tau = params.tau
    l1 = emitter.delta1 + 0.5j * g
    l2 = emitter.delta2 + 0.5j * g
    nu = np.asarray(nu, dtype=complex)

    a1 = 1.0 / (nu + l1)
    a2 = 1.0 / (nu + l2)
    b_nu = 1j * g * np.exp(1j * nu * tau) * a1 * a2
    a1_0 = 1.0 / l1
    a2_0 = 1.0 / l2
    b_0 = 1j * g * a1_0 * a2_0

    sq = np.sqrt(g / (2.0 * np.pi))
    rv1 = 1j * sq * np.exp(0.5j * nu * tau)
    rv2 = -1j * sq * np.exp(-0.5j * nu * tau)
    vc1 = -1j * sq
    vc2 = 1j * sq

    # left = <g| v_nu M(nu): row vector on the excited doublet
    left1 = rv1 * a1 + rv2 * b_nu
    left2 = rv2 * a2
    # right = M(0) v_0^dag |g>: column vector
    right1 = a1_0 * vc1
    right2 = b_0 * vc1 + a2_0 * vc2

    gg = g / (2.0 * np.pi)
    # first recursion term: (gg/nu) |u(0)><ubar(-nu)| with
    # u(0) = (-1, 1), ubar(-nu) = (-e^{-i nu tau/2}, e^{i nu tau/2}) at zero carrier
    u0_1, u0_2 = -1.0, 1.0
    ub1 = -np.exp(-0.5j * nu * tau)
    ub2 = np.exp(0.5j * nu * tau)
    w_first = (gg / nu) * (left1 * u0_1 + left2 * u0_2) * (ub1 * right1 + ub2 * right2)

    f1_1 = f1(nu, 1, params)
    f1_2 = f1(nu, 2, params)
    f2_val = f2(nu, params)
    x21 = -gg ** 2 * (np.exp(-0.5j * nu * tau) * f1_1 + np.exp(0.5j * nu * tau) * f1_2) \
        - gg ** 3 * np.exp(0.5j * nu * tau) * f2_val
    w_chain = left2 * x21 * right1

    return -8j * np.pi ** 2 * (w_first + w_chain)


def _stencil_scale(params: ModelParams) -> float:
    tau = params.tau
    inv_tau = 1.0 / tau if tau > 0.0 else np.inf
    return min(params.gamma, inv_tau)


def t_hat_v(nu, params: ModelParams):
    """Symmetrized inelastic amplitude t_hat(nu) = (t(nu) + t(-nu))/2 at equal detunings.

    Vectorized; even in nu; independent of the feedback phase.
    """
    emitter = params.require_chiral_v()
    if not emitter.equal_detunings:
        raise UnsupportedConfiguration(
            "analytic V-level amplitude implemented for delta1 = delta2 only")
    nu = np.asarray(nu, dtype=float)
    scalar = nu.ndim == 0
    nu = np.atleast_1d(nu)
    out = np.empty(nu.shape, dtype=complex)
    nu_c = 1e-3 * _stencil_scale(params)
    far = np.abs(nu) >= nu_c
    if np.any(far):
        out[far] = 0.5 * (_t_amp(nu[far], params) + _t_amp(-nu[far], params))
    if np.any(~far):
        # even quadratic extension from two safe points
        th1 = 0.5 * (_t_amp(nu_c, params) + _t_amp(-nu_c, params))
        th2 = 0.5 * (_t_amp(2.0 * nu_c, params) + _t_amp(-2.0 * nu_c, params))
        b = (th2 - th1) / (3.0 * nu_c ** 2)
        a = th1 - b * nu_c ** 2
        out[~far] = a + b * nu[~far] ** 2
    return out[0] if scalar else out


def inelastic_spectrum_v(grid, params: ModelParams, gamma_t: float | None = None) -> SpectralResult:
    """S~(nu) = gamma^2 |t_hat(nu)|^2 / pi on the given grid (T-free normalization)."""
    grid = np.asarray(grid, dtype=float)
    th = t_hat_v(grid, params)
    stilde = params.gamma ** 2 * np.abs(th) ** 2 / math.pi
    return SpectralResult(grid=grid, inelastic=stilde,
                          meta={"engine": "analytic-vlevel",
                                "gamma_tau": params.gamma * params.tau})


def closed_form_v_delta0(nu, params: ModelParams, gamma_t: float | None = None):
    """Printed closed form of S~(nu) for delta = 0 (both transitions resonant)."""
    emitter = params.require_chiral_v()
    if emitter.delta1 != 0.0 or emitter.delta2 != 0.0:
        raise UnsupportedConfiguration("closed form valid at delta1 = delta2 = 0 only")
    g, tau = params.gamma, params.tau
    nu = np.asarray(nu, dtype=float)
    gt = g * tau
    base = 4.0 * nu * nu + g * g
    bracket = base + np.exp(gt / 2.0) * ((4.0 * nu * nu - g * g) * np.cos(nu * tau)
                                         + 4.0 * nu * g * np.sin(nu * tau))
    return (4.0 * math.exp(-2.0 * gt) * (4.0 * g) ** 4 * (math.exp(gt / 2.0) - 1.0) ** 2
            * bracket ** 2 / (math.pi * base ** 4))


def k_kernel_v(t, params: ModelParams, theta_boundary: float = 0.5):
    """Closed cosine transform K(t) = (1/2pi) Int t_hat(nu) cos(nu t) dnu at equal detunings."""
    emitter = params.require_chiral_v()
    if not emitter.equal_detunings:
        raise UnsupportedConfiguration("K(t) implemented for delta1 = delta2 only")
    g = params.gamma
    tau = params.tau
    delta = emitter.delta1
    lam = delta + 0.5j * g
    lamc = delta - 0.5j * g
    t = np.asarray(t, dtype=float)
    a0 = (lamc + 0.5j * g * np.exp(1j * lam * tau)) / lam
    b2 = g * lamc ** 2 / (2.0 * lam ** 3) - 1j * g * g / (2.0 * lam ** 2) \
        + (1j * g * g / (2.0 * lam ** 2)) * np.exp(1j * lam * tau) * a0
    th_p = np.where(t > tau, 1.0, np.where(t == tau, theta_boundary, 0.0))
    th_m = np.where(t < tau, 1.0, np.where(t == tau, theta_boundary, 0.0))
    K = (g * g / lam ** 3) * (lam - g * delta * t) * np.exp(1j * lam * t) \
        + (2.0 * g / lam) * b2 * np.exp(1j * lam * t) \
        + th_p * (g * g / lam ** 2) * a0 * (1.0 - g * (t - tau) - 0.5j * g / lam) \
        * np.exp(1j * lam * (t - tau)) \
        + (g * g * delta / lam ** 3) * a0 * (np.exp(1j * lam * (t + tau))
                                             + th_m * np.exp(1j * lam * (tau - t)))
    return K


def g2_v(grid, params: ModelParams) -> CorrelationResult:
    """g2(t) = 1/2 |1 + K(t)/s^2|^2; analytic for t > tau, kink only at t = tau."""
    grid = np.asarray(grid, dtype=float)
    if np.any(grid < 0.0):
        raise ValueError("g2 is defined for t >= 0")
    s = elastic_amplitude_v(params)
    K = k_kernel_v(grid, params)
    vals = 0.5 * np.abs(1.0 + K / (s * s)) ** 2
    tau = params.tau
    marks = []
    if tau > 0.0:
        n = 1
        while grid.size and n * tau <= grid[-1] + 1e-12:
            marks.append(int(np.argmin(np.abs(grid - n * tau))))
            n += 1
    return CorrelationResult(grid=grid, values=vals, delay_marks=marks,
                             meta={"engine": "analytic-vlevel",
                                   "gamma_tau": params.gamma * tau})
