import numpy as np
import pytest
from hypothesis import given, strategies as st

from skdv.dynamics import ModelParams, drift, linear_symbol, nonlinear_term
from skdv.functionals import CutoffProfile
from skdv.spectral import (
    ConfigurationError,
    SpectralField,
    TorusGrid,
    derivative,
    hs_norm,
    l2_inner,
    random_field,
)

seeds = st.integers(0, 2**32 - 1)


def field(grid, fn):
    return SpectralField.from_function(grid, fn)


def close(a, b, atol=1e-12):
    np.testing.assert_allclose(a.coeffs, b.coeffs, atol=atol, rtol=0)


class TestParams:
    @pytest.mark.parametrize("kw", [dict(gamma=-1.0), dict(epsilon=1.5), dict(epsilon=-0.1),
                                    dict(galerkin_dim=0)])
    def test_invalid(self, kw):
        with pytest.raises(ConfigurationError):
            ModelParams(**kw)

    def test_dim_exceeds_grid(self):
        with pytest.raises(ConfigurationError):
            drift(SpectralField.zeros(TorusGrid(8)), ModelParams(galerkin_dim=9))


class TestNonlinear:
    def test_examples(self, grid):
        close(nonlinear_term(SpectralField.zeros(grid)), SpectralField.zeros(grid))
        close(nonlinear_term(field(grid, np.sin)), field(grid, lambda x: 0.5 * np.sin(2 * x)))

    @given(seeds)
    def test_orthogonal(self, seed):
        g = TorusGrid(16)
        u = random_field(g, np.random.default_rng(seed), s=0.0, amplitude=2.0)
        assert abs(l2_inner(u, nonlinear_term(u))) < 1e-10 * hs_norm(u, 1.0) ** 3


class TestDrift:
    def test_zero(self, grid):
        close(drift(SpectralField.zeros(grid), ModelParams(gamma=1.0, epsilon=0.5, galerkin_dim=16)),
              SpectralField.zeros(grid), atol=0)

    def test_sine(self, grid):
        p = ModelParams(gamma=1.0, galerkin_dim=16)
        expect = field(grid, lambda x: -np.cos(x) + 0.5 * np.sin(2 * x) + np.sin(x))
        close(drift(field(grid, np.sin), p), expect)

    def test_cutoff_kills_conservative_part(self, grid):
        u = random_field(grid, np.random.default_rng(0), s=1.0, amplitude=3.0)
        p = ModelParams(gamma=0.7, epsilon=0.1, galerkin_dim=16, cutoff=CutoffProfile(3.0))
        close(drift(u, p), 0.7 * u + 0.1 * derivative(u, 4), atol=1e-12)

    def test_cutoff_partial(self, grid):
        u = random_field(grid, np.random.default_rng(1), s=1.0, amplitude=3.0)
        full = ModelParams(gamma=0.0, galerkin_dim=16)
        # |u|_{H1} = 3 = 3/4 of radius 4, so theta = 1/2
        half = ModelParams(gamma=0.0, galerkin_dim=16, cutoff=CutoffProfile(4.0))
        close(drift(u, half), 0.5 * drift(u, full), atol=1e-12)

    def test_galerkin_projection(self):
        g = TorusGrid(16)
        u = random_field(g, np.random.default_rng(2), band=6)
        d = drift(u, ModelParams(galerkin_dim=8, cutoff=CutoffProfile()))
        assert np.all(d.coeffs[9:] == 0)

    @given(seeds)
    def test_energy_identities(self, seed):
        g = TorusGrid(16)
        u = random_field(g, np.random.default_rng(seed), s=0.0, amplitude=2.0)
        tol = 1e-10 * hs_norm(u, 2.0) ** 2 * (1 + hs_norm(u, 1.0))
        assert abs(l2_inner(u, drift(u, ModelParams(galerkin_dim=16)))) < tol
        gamma, eps = 0.8, 0.3
        d = drift(u, ModelParams(gamma=gamma, galerkin_dim=16))
        assert l2_inner(u, d) == pytest.approx(gamma * hs_norm(u, 0.0) ** 2, abs=tol)
        d = drift(u, ModelParams(epsilon=eps, galerkin_dim=16))
        assert l2_inner(u, d) == pytest.approx(eps * hs_norm(derivative(u, 2), 0.0) ** 2, abs=tol)


class TestSymbol:
    def test_examples(self):
        assert linear_symbol(ModelParams(gamma=0.3), 0) == -0.3
        assert linear_symbol(ModelParams(), 1) == 1j
        assert linear_symbol(ModelParams(gamma=1.0, epsilon=0.5), 2) == pytest.approx(8j - 1 - 8)

    @given(st.integers(-32, 32), st.floats(0, 5), st.floats(0, 1), st.floats(1e-4, 0.1))
    def test_modulus(self, n, gamma, eps, dt):
        p = ModelParams(gamma=gamma, epsilon=eps, galerkin_dim=32)
        assert abs(np.exp(dt * linear_symbol(p, n))) == pytest.approx(np.exp(-(gamma + eps * n**4) * dt),
                                                                       rel=1e-12)

    def test_out_of_band(self):
        with pytest.raises(ConfigurationError):
            linear_symbol(ModelParams(galerkin_dim=4), 5)
