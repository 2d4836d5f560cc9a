"""Galerkin drift of the damped, regularised KdV equation.

The evolution is written ``du = -drift(u) dt + noise`` with

    drift(u) = theta(|u|_{H^1}) (u_xxx + P_N(u u_x)) + gamma u + eps u_xxxx.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .functionals import CutoffProfile, cutoff_eval
from .spectral import (
    ConfigurationError,
    SpectralField,
    derivative_symbol,
    hs_norm_array,
    product_array,
)


@dataclass(frozen=True)
class ModelParams:
    gamma: float = 0.0
    epsilon: float = 0.0
    galerkin_dim: int = 32
    cutoff: CutoffProfile = field(default_factory=CutoffProfile)
    # switch for linear-flow checks; the model always has it on
    nonlinear: bool = True

    def __post_init__(self):
        if self.gamma < 0:
            raise ConfigurationError("gamma >= 0 required")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigurationError("0 <= epsilon <= 1 required")
        if self.galerkin_dim < 1:
            raise ConfigurationError("galerkin_dim must be positive")


def _check(u: SpectralField, p: ModelParams) -> None:
    if p.galerkin_dim > u.grid.n_modes:
        raise ConfigurationError("galerkin_dim exceeds the grid's n_modes")


def nonlinear_array(coeffs: np.ndarray, n_points: int) -> np.ndarray:
    """Dealiased coefficients of u * u_x."""
    ux = coeffs * derivative_symbol(coeffs.shape[-1] - 1, 1)
    return product_array(coeffs, ux, n_points)


def theta_array(p: ModelParams, coeffs: np.ndarray) -> np.ndarray:
    return np.asarray(cutoff_eval(p.cutoff, hs_norm_array(coeffs, 1.0)))


def symbol_array(p: ModelParams, n_modes: int, theta=1.0) -> np.ndarray:
    """-(theta (in)^3 + gamma + eps n^4) for n = 0..n_modes; theta may be batched."""
    n = np.arange(n_modes + 1)
    theta = np.asarray(theta, dtype=float)[..., None]
    return -(theta * (1j * n) ** 3 + p.gamma + p.epsilon * n.astype(float) ** 4)


def galerkin_mask(p: ModelParams, n_modes: int) -> np.ndarray:
    return np.arange(n_modes + 1) <= p.galerkin_dim


def nonlinear_term(u: SpectralField) -> SpectralField:
    return SpectralField(u.grid, nonlinear_array(u.coeffs, u.grid.n_points))


def drift(u: SpectralField, p: ModelParams) -> SpectralField:
    _check(u, p)
    n_modes = u.grid.n_modes
    c = u.coeffs
    th = float(theta_array(p, c))
    disp = c * derivative_symbol(n_modes, 3)
    nl = nonlinear_array(c, u.grid.n_points) if p.nonlinear else 0.0
    out = th * (disp + nl) + p.gamma * c + p.epsilon * c * derivative_symbol(n_modes, 4)
    out = np.where(galerkin_mask(p, n_modes), out, 0.0)
    return SpectralField(u.grid, out)


def linear_symbol(p: ModelParams, n: int, theta: float = 1.0) -> complex:
    """Growth rate of mode n under the linear flow -(theta (in)^3 + gamma + eps n^4).

    ``theta`` is the frozen cutoff value; in the untruncated regime it is 1.
    """
    if abs(n) > p.galerkin_dim:
        raise ConfigurationError(f"|n| = {abs(n)} exceeds galerkin_dim")
    return complex(-(theta * (1j * n) ** 3 + p.gamma + p.epsilon * float(n) ** 4))
