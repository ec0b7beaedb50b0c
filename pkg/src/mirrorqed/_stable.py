"""Stable evaluation of the removable-singularity motifs used by the closed forms.

Every closed-form expression in this package reduces its singular quotients to a
small set of entire functions evaluated here:

  phi1(w)   = (e^w - 1)/w
  phi1p(w)  = d/dw phi1(w) = (e^w (w - 1) + 1)/w^2
  phi1ppp(w)= d^3/dw^3 phi1(w) = (e^w (w^3 - 3w^2 + 6w - 6) + 6)/w^4
  sinc(z)   = sin(z)/z
  cosc(z)   = (1 - cos z)/z^2
  exp_remainder(z, n) = e^z - sum_{l<=n} z^l/l!

All accept complex scalars or arrays; near w = 0 a truncated power series is
used, elsewhere the closed form (no precision cliff at the crossover).
"""

from __future__ import annotations

import numpy as np


def _branch(w: np.ndarray, small: np.ndarray, series: np.ndarray,
            closed_fn) -> np.ndarray:
    wb = np.where(small, 1.0, w)
    return np.where(small, series, closed_fn(wb))


def phi1(w):
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-4
    ws = np.where(small, w, 0.0)
    series = 1.0 + ws / 2.0 + ws * ws / 6.0 + ws * ws * ws / 24.0
    return _branch(w, small, series, lambda x: (np.exp(x) - 1.0) / x)


def _poly_series(w, coeff_fn, terms: int):
    """sum_m coeff_fn(m) * w^m, evaluated with Horner on the coefficient list."""
    acc = np.zeros_like(w)
    for m in reversed(range(terms)):
        acc = acc * w + coeff_fn(m)
    return acc


def phi1p(w):
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 0.5
    ws = np.where(small, w, 0.0)
    fact = [1.0]
    for k in range(1, 26):
        fact.append(fact[-1] * k)
    series = _poly_series(ws, lambda m: (m + 1) / fact[m + 2], 22)
    return _branch(w, small, series, lambda x: (np.exp(x) * (x - 1.0) + 1.0) / (x * x))


def phi1ppp(w):
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 0.5
    ws = np.where(small, w, 0.0)
    fact = [1.0]
    for k in range(1, 28):
        fact.append(fact[-1] * k)
    series = _poly_series(ws, lambda m: (m + 1) * (m + 2) * (m + 3) / fact[m + 4], 22)
    return _branch(w, small, series,
                   lambda x: (np.exp(x) * (x ** 3 - 3 * x ** 2 + 6 * x - 6) + 6.0) / x ** 4)


def sinc(z):
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-4
    zs = np.where(small, z, 0.0)
    series = 1.0 - zs * zs / 6.0 + zs ** 4 / 120.0
    return _branch(z, small, series, lambda x: np.sin(x) / x)


def cosc(z):
    """(1 - cos z)/z^2 = sinc(z/2)^2 / 2."""
    h = sinc(np.asarray(z, dtype=complex) / 2.0)
    return 0.5 * h * h


def qdiff(a, b, tau: float):
    """(e^{i a tau} - e^{i b tau})/(a - b), entire in both arguments."""
    a = np.asarray(a, dtype=complex)
    return 1j * tau * np.exp(1j * a * tau) * phi1(1j * (np.asarray(b, dtype=complex) - a) * tau)


def exp_remainder(z: complex, n: int) -> complex:
    """e^z minus its Taylor polynomial of degree n (n = -1 gives e^z itself).

    For |z| below the degree the direct subtraction cancels catastrophically, so
    the tail series z^{n+1}/(n+1)! * sum_j z^j (n+1)!/(n+1+j)! is summed instead.
    """
    if n < 0:
        return complex(np.exp(z))
    z = complex(z)
    if abs(z) < n + 2:
        term = 1.0 + 0.0j
        for l in range(1, n + 2):
            term *= z / l
        acc = 0.0j
        j = n + 2
        while True:
            acc += term
            term *= z / j
            j += 1
            if abs(term) <= 1e-20 * (abs(acc) + 1e-300) or j > n + 600:
                break
        return acc
    term = 1.0 + 0.0j
    partial = term
    for l in range(1, n + 1):
        term *= z / l
        partial += term
    return complex(np.exp(z)) - partial
