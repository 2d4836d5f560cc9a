"""KdV functionals I0, I1, I2, the derivatives of I2 and the smooth cutoff."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import (
    SpectralField,
    derivative_symbol,
    hs_norm_array,
    to_physical,
    _check_same_grid,
)


def _bump(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def theta(t):
    """C-infinity step: 1 on [0, 1/2], 0 on [1, inf), symmetric about t = 3/4."""
    a = _bump(1.0 - np.asarray(t, dtype=float))
    b = _bump(np.asarray(t, dtype=float) - 0.5)
    return a / (a + b)


def _theta_prime(t):
    t = np.asarray(t, dtype=float)
    a, b = _bump(1.0 - t), _bump(t - 0.5)
    inside = (t > 0.5) & (t < 1.0)
    da = np.zeros_like(t)
    db = np.zeros_like(t)
    da[inside] = -a[inside] / (1.0 - t[inside]) ** 2
    db[inside] = b[inside] / (t[inside] - 0.5) ** 2
    denom = (a + b) ** 2
    return np.where(inside, (da * b - a * db) / np.where(inside, denom, 1.0), 0.0)


# sup |theta'|, attained at the midpoint t = 3/4
THETA_LIPSCHITZ = float(abs(_theta_prime(np.array([0.75]))[0]))


@dataclass(frozen=True)
class CutoffProfile:
    radius: float = math.inf

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("cutoff radius must be positive")

    @property
    def lipschitz(self) -> float:
        return THETA_LIPSCHITZ / self.radius


def cutoff_eval(p: CutoffProfile, x):
    """theta(x / radius); identically 1 for an infinite radius."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("cutoff argument must be nonnegative")
    if math.isinf(p.radius):
        out = np.ones_like(x)
    else:
        out = theta(x / p.radius)
    return float(out) if out.ndim == 0 else out


# --- functionals ----------------------------------------------------------


def _derivs(coeffs: np.ndarray, m: int, orders) -> list[np.ndarray]:
    n_modes = coeffs.shape[-1] - 1
    out = []
    for k in orders:
        c = coeffs if k == 0 else coeffs * derivative_symbol(n_modes, k)
        out.append(to_physical(c, m))
    return out


def _integrate(values: np.ndarray) -> np.ndarray:
    m = values.shape[-1]
    return values.sum(axis=-1) * (2.0 * np.pi / m)


def i0_array(coeffs: np.ndarray) -> np.ndarray:
    return hs_norm_array(coeffs, 0.0) ** 2


def i1_array(coeffs: np.ndarray, m: int) -> np.ndarray:
    v, vx = _derivs(coeffs, m, (0, 1))
    return _integrate(0.5 * vx**2 - v**3 / 6.0)


def i2_array(coeffs: np.ndarray, m: int) -> np.ndarray:
    v, vx, vxx = _derivs(coeffs, m, (0, 1, 2))
    return _integrate(vxx**2 - (5.0 / 3.0) * v * vx**2 + (5.0 / 36.0) * v**4)


def functional_I0(v: SpectralField) -> float:
    """Integral of v^2, i.e. the squared L^2 norm."""
    return float(i0_array(v.coeffs))


def functional_I1(v: SpectralField) -> float:
    """Integral of 1/2 (v_x)^2 - v^3 / 6.

    This is the KdV Hamiltonian for u_t + u_xxx + u u_x = 0; the cubic
    coefficient 1/6 is the only one that makes it an invariant.
    """
    return float(i1_array(v.coeffs, v.grid.quadrature_points))


def functional_I2(v: SpectralField) -> float:
    """Integral of (v_xx)^2 - 5/3 v (v_x)^2 + 5/36 v^4."""
    return float(i2_array(v.coeffs, v.grid.quadrature_points))


def frechet_I2_first(v: SpectralField, w: SpectralField) -> float:
    """<I2'(v), w>."""
    _check_same_grid(v, w)
    m = v.grid.quadrature_points
    v0, v1, v2 = _derivs(v.coeffs, m, (0, 1, 2))
    w0, w1, w2 = _derivs(w.coeffs, m, (0, 1, 2))
    integrand = (
        2.0 * v2 * w2
        - (5.0 / 3.0) * v1**2 * w0
        - (5.0 / 3.0) * (2.0 * v0 * v1) * w1
        + (5.0 / 9.0) * v0**3 * w0
    )
    return float(_integrate(integrand))


def frechet_I2_second(v: SpectralField, h: SpectralField, w: SpectralField) -> float:
    """<I2''(v) h, w> = d/ds <I2'(v + s h), w> at s = 0.

    The w-derivatives are integrated by parts so only w itself and w_xx
    appear. The leading term carries the factor 2 produced by differentiating
    (v_xx)^2 twice.
    """
    _check_same_grid(v, h)
    _check_same_grid(v, w)
    m = v.grid.quadrature_points
    v0, v1, v2 = _derivs(v.coeffs, m, (0, 1, 2))
    h0, h1, h2 = _derivs(h.coeffs, m, (0, 1, 2))
    (w0, w2) = _derivs(w.coeffs, m, (0, 2))
    integrand = (
        2.0 * h2 * w2
        + (5.0 / 3.0) * v0**2 * h0 * w0
        + (10.0 / 3.0) * v1 * h1 * w0
        + (10.0 / 3.0) * v0 * h2 * w0
        + (10.0 / 3.0) * h0 * v2 * w0
    )
    return float(_integrate(integrand))
