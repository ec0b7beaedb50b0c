"""Numerical residual oracle for the two-level pair-propagator integral equation.

The closed-form kernel used by the spectrum pipeline solves, at total energy
E = 0 and second index nu = 0,

  W(x) = 1/(-x + i eta)
         - (gamma/2pi) Int dnu1 [1/(-x - nu1 + i eta)]
                                [P e^{i nu1 tau}/(lam - nu1)] W(nu1),

with W(x) = 1/(-x + i eta) + i gamma P m(0) G(-x) and P = e^{i wbar tau}. This
module inserts the closed form on both sides at finite eta and finite window
and reports |LHS - RHS|, which must shrink as eta -> 0+ and the window grows.
The closed form corresponds to eta = 0+, so the residual scales like O(eta)
plus window truncation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureNotConverged, UnsupportedConfiguration
from .params import ModelParams, phase_factor
from .tls import g_sum


@dataclass(frozen=True)
class QuadratureSpec:
    """Window half-width, regulator eta and adaptive-quadrature controls."""

    eta: float = 1e-3
    window: float = 50.0
    epsabs: float = 1e-10
    limit: int = 500
    check_refinement: bool = False
    refine_tol: float = 1e-4


def _wbar_closed_form(x, params: ModelParams, eta: float):
    g = params.gamma
    P = phase_factor(params)
    emitter = params.require_two_level()
    lam = emitter.delta + 1j * g
    m0 = 1.0 / (lam - 1j * g * P)
    return 1.0 / (-x + 1j * eta) + 1j * g * P * m0 * g_sum(-x, params)


def _complex_quad(f, a: float, b: float, points, epsabs: float, limit: int) -> complex:
    pts = sorted(pt for pt in points if a < pt < b)
    re = quad(lambda x: f(x).real, a, b, points=pts or None, limit=limit, epsabs=epsabs)[0]
    im = quad(lambda x: f(x).imag, a, b, points=pts or None, limit=limit, epsabs=epsabs)[0]
    return re + 1j * im


def wbar_residual(nu_prime: float, nu: float, params: ModelParams,
                  spec: QuadratureSpec | None = None) -> float:
    """|LHS - RHS| of the pair-propagator equation at (nu_prime, nu = 0), in 1/frequency units.

    Multiply by gamma for the dimensionless residual quoted in 1/gamma units
    (identical when gamma = 1).
    """
    params.require_two_level()
    if nu != 0.0:
        raise UnsupportedConfiguration("the closed-form kernel is available at nu = 0 only")
    spec = spec or QuadratureSpec()
    if spec.eta <= 0.0:
        raise UnsupportedConfiguration("eta must be positive")
    g = params.gamma
    P = phase_factor(params)
    emitter = params.require_two_level()
    lam = emitter.delta + 1j * g
    eta = spec.eta

    lhs = _wbar_closed_form(nu_prime, params, eta)

    def integrand(n1: float) -> complex:
        return (1.0 / (-nu_prime - n1 + 1j * eta)) \
            * (P * np.exp(1j * n1 * params.tau) / (lam - n1)) \
            * _wbar_closed_form(n1, params, eta)

    def rhs_for(window: float) -> complex:
        integral = _complex_quad(integrand, -window, window,
                                 points=(0.0, -nu_prime), epsabs=spec.epsabs,
                                 limit=spec.limit)
        return 1.0 / (-nu_prime + 1j * eta) - (g / (2.0 * np.pi)) * integral

    rhs = rhs_for(spec.window)
    if spec.check_refinement:
        rhs2 = rhs_for(1.5 * spec.window)
        if abs(rhs - rhs2) > spec.refine_tol:
            raise QuadratureNotConverged(
                f"window refinement moved the RHS by {abs(rhs - rhs2):.3e} "
                f"(> {spec.refine_tol:.1e})")
    return float(abs(lhs - rhs))
