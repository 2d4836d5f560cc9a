"""Fourier calculus on the 2*pi-periodic torus.

Fields are stored by their nonnegative-wavenumber coefficients
``c[n] = v_hat(n)`` for ``n = 0..N`` with

    v_hat(n) = (2*pi)**-0.5 * integral_0^{2*pi} exp(-i*n*x) v(x) dx,

the negative half being implied by Hermitian symmetry ``v_hat(-n) =
conj(v_hat(n))``. All kernels accept arrays with arbitrary leading batch
dimensions so ensembles can be advanced in one call.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SQRT_2PI = np.sqrt(2.0 * np.pi)


class ConfigurationError(ValueError):
    """Raised for malformed grids, fields or run configurations."""


@dataclass(frozen=True)
class TorusGrid:
    n_modes: int
    n_points: int | None = None
    dealias: bool = True
    length: float = field(default=2.0 * np.pi, init=False)

    def __post_init__(self):
        if self.n_modes < 1:
            raise ConfigurationError("n_modes must be positive")
        if self.n_points is None:
            object.__setattr__(self, "n_points", 4 * self.n_modes)
        if self.n_points < 2 * self.n_modes + 1:
            raise ConfigurationError("n_points >= 2*n_modes + 1 required")
        if self.dealias and self.n_points < 3 * self.n_modes + 1:
            raise ConfigurationError("n_points >= 3*n_modes + 1 required for dealiasing")

    @property
    def wavenumbers(self) -> np.ndarray:
        return np.arange(self.n_modes + 1)

    @property
    def x(self) -> np.ndarray:
        return self.length * np.arange(self.n_points) / self.n_points

    @property
    def quadrature_points(self) -> int:
        """Smallest even grid integrating quartic polynomials of band-N fields exactly."""
        m = max(self.n_points, 4 * self.n_modes + 2)
        return m + (m % 2)


@dataclass(frozen=True, eq=False)
class SpectralField:
    grid: TorusGrid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape[-1] != self.grid.n_modes + 1:
            raise ConfigurationError(
                f"expected {self.grid.n_modes + 1} coefficients, got {c.shape[-1]}"
            )
        # mode 0 of a real field is real
        c = c.copy()
        c[..., 0] = c[..., 0].real
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, grid: TorusGrid) -> "SpectralField":
        return cls(grid, np.zeros(grid.n_modes + 1, dtype=complex))

    @classmethod
    def from_function(cls, grid: TorusGrid, fn) -> "SpectralField":
        return forward_transform(grid, fn(grid.x))

    def full_spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        """Wavenumbers -N..N and matching coefficients."""
        n = np.arange(-self.grid.n_modes, self.grid.n_modes + 1)
        neg = np.conj(self.coeffs[..., :0:-1])
        return n, np.concatenate([neg, self.coeffs], axis=-1)

    def values(self) -> np.ndarray:
        return inverse_transform(self)

    def __add__(self, other: "SpectralField") -> "SpectralField":
        _check_same_grid(self, other)
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        _check_same_grid(self, other)
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs)


def _check_same_grid(f: SpectralField, g: SpectralField) -> None:
    if f.grid != g.grid:
        raise ConfigurationError("fields live on different grids")


# --- array kernels --------------------------------------------------------


def to_physical(coeffs: np.ndarray, n_points: int) -> np.ndarray:
    """Samples on ``n_points`` uniform nodes of the field with given coefficients."""
    n_keep = coeffs.shape[-1]
    half = n_points // 2 + 1
    if n_keep > half:
        raise ConfigurationError("too few points for the retained band")
    padded = np.zeros(coeffs.shape[:-1] + (half,), dtype=complex)
    padded[..., :n_keep] = coeffs
    return np.fft.irfft(padded, n=n_points, axis=-1) * (n_points / SQRT_2PI)


def to_spectral(values: np.ndarray, n_modes: int) -> np.ndarray:
    """Quadrature Fourier coefficients for n = 0..n_modes of uniform samples."""
    m = values.shape[-1]
    return np.fft.rfft(values, axis=-1)[..., : n_modes + 1] * (SQRT_2PI / m)


def derivative_symbol(n_modes: int, order: int) -> np.ndarray:
    return (1j * np.arange(n_modes + 1)) ** order


def sobolev_weights(n_modes: int, s: float) -> np.ndarray:
    """Weights turning half-spectrum |c_n|^2 sums into full H^s sums."""
    n = np.arange(n_modes + 1)
    w = 2.0 * (1.0 + n**2) ** s
    w[0] = 1.0
    return w


def hs_norm_array(coeffs: np.ndarray, s: float) -> np.ndarray:
    w = sobolev_weights(coeffs.shape[-1] - 1, s)
    return np.sqrt(np.sum(w * np.abs(coeffs) ** 2, axis=-1))


def l2_inner_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Real L^2 pairing of two real fields given by half spectra."""
    prod = (a * np.conj(b)).real
    return prod[..., 0] + 2.0 * np.sum(prod[..., 1:], axis=-1)


def product_array(a: np.ndarray, b: np.ndarray, n_points: int) -> np.ndarray:
    """Coefficients (n <= N) of the pointwise product, evaluated on ``n_points`` nodes."""
    n_modes = a.shape[-1] - 1
    prod = to_physical(a, n_points) * to_physical(b, n_points)
    return to_spectral(prod, n_modes)


# --- field API ------------------------------------------------------------


def forward_transform(grid: TorusGrid, values) -> SpectralField:
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != grid.n_points:
        raise ConfigurationError(
            f"expected {grid.n_points} samples, got {values.shape[-1]}"
        )
    return SpectralField(grid, to_spectral(values, grid.n_modes))


def inverse_transform(f: SpectralField) -> np.ndarray:
    return to_physical(f.coeffs, f.grid.n_points)


def derivative(f: SpectralField, order: int = 1) -> SpectralField:
    if order < 1:
        raise ConfigurationError("derivative order must be >= 1")
    return SpectralField(f.grid, f.coeffs * derivative_symbol(f.grid.n_modes, order))


def hs_norm(f: SpectralField, s: float) -> float:
    """sqrt(sum_n (1+|n|^2)^s |v_hat(n)|^2) over all n in -N..N."""
    return float(hs_norm_array(f.coeffs, s))


def l2_inner(f: SpectralField, g: SpectralField) -> float:
    _check_same_grid(f, g)
    return float(l2_inner_array(f.coeffs, g.coeffs))


def project(f: SpectralField, m: int) -> SpectralField:
    if not 0 <= m <= f.grid.n_modes:
        raise ConfigurationError(f"projection level {m} outside [0, {f.grid.n_modes}]")
    c = f.coeffs.copy()
    c[..., m + 1 :] = 0.0
    return SpectralField(f.grid, c)


def pointwise_product(f: SpectralField, g: SpectralField) -> SpectralField:
    _check_same_grid(f, g)
    return SpectralField(f.grid, product_array(f.coeffs, g.coeffs, f.grid.n_points))


def random_field(grid: TorusGrid, rng: np.random.Generator, s: float = 2.0,
                 amplitude: float = 1.0, band: int | None = None) -> SpectralField:
    """Random real field with coefficients decaying like (1+n^2)^(-s/2-1/2).

    The result is rescaled so that its H^s norm equals ``amplitude``.
    """
    band = grid.n_modes if band is None else band
    n = np.arange(grid.n_modes + 1)
    c = rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size)
    c *= (1.0 + n**2) ** (-(s + 1.0) / 2.0)
    c[band + 1 :] = 0.0
    c[0] = c[0].real
    norm = hs_norm_array(c, s)
    if norm > 0:
        c *= amplitude / norm
    return SpectralField(grid, c)
