import csv
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skdv.dynamics import ModelParams, nonlinear_array, symbol_array
from skdv.integrator import (
    BlowUpError,
    InitialCondition,
    NoiseIncrement,
    SimConfig,
    TrajectoryRecord,
    initial_state,
    read_state_snapshot,
    run,
    run_coupled,
    run_ensemble,
    self_convergence,
    simulate_batch,
    step,
    write_state_snapshot,
)
from skdv.noise import (
    CoefficientPreset,
    LevySpec,
    WienerSpec,
    directions_to_coeffs,
    path_streams,
    profile_coeffs,
    sample_jump_arrays,
)
from skdv.spectral import ConfigurationError, SpectralField, TorusGrid, hs_norm, random_field

ADDITIVE = dict(wiener=WienerSpec((0.0, 1.0, 1.0)),
                preset=CoefficientPreset(g_kind="additive", sigma=(0.0, 0.3, 0.2)))


def cfg(**kw):
    base = dict(model=ModelParams(gamma=1.0, galerkin_dim=16), dt=0.01, horizon=0.5,
                initial_condition=InitialCondition("single_mode", amp=0.5))
    base.update(kw)
    return SimConfig(**base)


def same_record(a: TrajectoryRecord, b: TrajectoryRecord):
    for name in ("times", "l2_norm", "h1_norm", "h2_norm", "i0", "i1", "i2"):
        assert np.array_equal(getattr(a, name), getattr(b, name)), name
    assert np.array_equal(a.final_state.coeffs, b.final_state.coeffs)
    assert a.jump_log == b.jump_log


class TestConfig:
    def test_dt_le_horizon(self):
        with pytest.raises(ConfigurationError, match="dt <= horizon"):
            cfg(dt=1.0, horizon=0.5)

    def test_horizon_multiple(self):
        with pytest.raises(ConfigurationError, match="multiple"):
            cfg(dt=0.3, horizon=1.0)

    def test_stride(self):
        with pytest.raises(ConfigurationError):
            cfg(record_stride=0)

    def test_overflow(self):
        with pytest.raises(ConfigurationError, match="finite"):
            cfg(model=ModelParams(epsilon=1.0, galerkin_dim=16), dt=1e305, horizon=1e305)

    def test_noise_off(self):
        assert cfg().noise_off
        assert not cfg(**ADDITIVE).noise_off
        assert cfg(wiener=WienerSpec((0.0, 0.0)), preset=ADDITIVE["preset"]).noise_off


class TestInitialConditions:
    def test_kinds(self):
        g = TorusGrid(32)
        assert not np.any(InitialCondition().build(g).coeffs)
        u = InitialCondition("single_mode", k=3, amp=2.0, phase="cos").build(g)
        assert u.coeffs[3] == pytest.approx(2.0 * np.sqrt(np.pi / 2))
        r = InitialCondition("random_hs", amp=1.5, s=1.0, seed=4).build(g)
        assert hs_norm(r, 1.0) == pytest.approx(1.5)

    def test_soliton_periodic_and_symmetric(self):
        g = TorusGrid(64)
        v = InitialCondition("soliton_like", amp=1.0, width=0.5).build(g).values()
        x = g.x
        assert v[np.argmin(np.abs(x - np.pi))] == pytest.approx(1.0, rel=1e-6)
        np.testing.assert_allclose(v[1:], v[1:][::-1], atol=1e-12)

    def test_unknown(self):
        with pytest.raises(ConfigurationError):
            InitialCondition("gaussian")


class TestStep:
    def test_zero_equilibrium(self):
        c = cfg()
        z = SpectralField.zeros(c.grid)
        assert not np.any(step(z, c).coeffs)

    def test_formula_left_point(self):
        # every coefficient uses the pre-step state
        c = cfg(wiener=WienerSpec((0.0, 1.0)), levy=LevySpec(rate=2.0),
                preset=CoefficientPreset(g_kind="linear_multiplicative", sigma=(0.0, 0.4), beta_g=1.5,
                                         k_kind="linear_mark", beta_k=0.5))
        u = random_field(c.grid, np.random.default_rng(3), amplitude=0.5)
        dw = np.array([0.0, 0.1, -0.2])
        out = step(u, c, NoiseIncrement(dw, 0.7))
        U = u.coeffs
        ell = np.sqrt(2.0) * U[1].real
        g = (1 + 1.5 * ell) * directions_to_coeffs(dw * np.array([0.0, 0.4, 0.4]), 16)
        k = profile_coeffs(((1, 0.0, 1.0),), 16) + 0.5 * U
        comp = c.dt * 2.0 * 0.5
        inner = U - c.dt * nonlinear_array(U, c.grid.n_points) + g + (0.7 - comp) * k
        E = np.exp(c.dt * symbol_array(c.model, 16))
        np.testing.assert_allclose(out.coeffs, E * inner, atol=1e-15)

    def test_local_error_second_order(self):
        c = cfg(initial_condition=InitialCondition("single_mode", amp=0.2))
        u = initial_state(c)

        def fine(dt):
            v = u
            for _ in range(256):
                v = step(v, c, dt=dt / 256)
            return v.coeffs

        errs = [np.linalg.norm(step(u, c, dt=dt).coeffs - fine(dt)) for dt in (0.04, 0.02, 0.01)]
        ratios = np.array(errs[:-1]) / np.array(errs[1:])
        assert np.all((ratios > 3.5) & (ratios < 4.5))


class TestRun:
    def test_horizon_zero(self):
        rec = run(cfg(horizon=0.0))
        assert rec.times.tolist() == [0.0]
        assert rec.l2_norm[0] == pytest.approx(0.5 * np.sqrt(np.pi))

    def test_decay_law(self):
        rec = run(cfg(dt=1e-3, horizon=1.0, record_stride=100))
        exact = 0.5 * np.sqrt(np.pi) * np.exp(-rec.times)
        np.testing.assert_allclose(rec.l2_norm, exact, rtol=1e-4)

    def test_determinism_with_all_noise(self):
        c = cfg(levy=LevySpec(rate=3.0, large_rate=2.0), seed=7, **{
            "wiener": ADDITIVE["wiener"],
            "preset": replace(ADDITIVE["preset"], k_kind="linear_mark", beta_k=0.3,
                              large_kind="additive_mark")})
        same_record(run(c, path_index=3), run(c, path_index=3))
        a, b = run(c, path_index=3), run(c, path_index=4)
        assert not np.array_equal(a.final_state.coeffs, b.final_state.coeffs)

    def test_zero_noise_is_deterministic_stepper(self):
        quiet = cfg(wiener=WienerSpec((0.0, 0.0, 0.0)), levy=LevySpec(rate=0.0),
                    preset=CoefficientPreset(g_kind="additive", sigma=(0.0, 1.0, 1.0), k_kind="additive_mark"))
        same_record(run(quiet), run(cfg()))

    def test_interlace_noop_without_large_jumps(self):
        c = cfg(levy=LevySpec(rate=3.0), preset=CoefficientPreset(k_kind="additive_mark", large_kind="additive_mark"))
        same_record(run(c), run(replace(c, interlace=False)))

    @pytest.mark.parametrize("dt", [0.1, 0.01])
    def test_exact_linear_flow(self, dt):
        model = ModelParams(gamma=0.5, epsilon=0.01, galerkin_dim=16, nonlinear=False)
        c = cfg(model=model, dt=dt, horizon=1.0, initial_condition=InitialCondition("random_hs", seed=2))
        u0 = initial_state(c)
        out = run(c).final_state.coeffs
        exact = np.exp(1.0 * symbol_array(model, 16)) * u0.coeffs
        np.testing.assert_allclose(out, exact, atol=1e-12 * np.abs(u0.coeffs).max())

    @settings(max_examples=20)
    @given(gamma=st.floats(0.0, 3.0), eps=st.floats(0.0, 0.05),
           steps=st.sampled_from([1, 3, 10, 40]), seed=st.integers(0, 99))
    def test_linear_flow_property(self, gamma, eps, steps, seed):
        model = ModelParams(gamma=gamma, epsilon=eps, galerkin_dim=12, nonlinear=False)
        c = cfg(model=model, dt=1.0 / steps, horizon=1.0,
                initial_condition=InitialCondition("random_hs", seed=seed))
        u0 = initial_state(c)
        exact = np.exp(symbol_array(model, 12)) * u0.coeffs
        np.testing.assert_allclose(run(c, functionals=False).final_state.coeffs, exact,
                                   atol=1e-12 * np.abs(u0.coeffs).max())

    def test_galerkin_nesting(self):
        # N = 24 re-projected to M = 8 every step matches a native M = 8 run
        big = cfg(model=ModelParams(gamma=1.0, galerkin_dim=24), seed=5, **ADDITIVE)
        small = replace(big, model=ModelParams(gamma=1.0, galerkin_dim=8))
        u0 = InitialCondition("single_mode", k=2, amp=0.4).build(big.grid)

        def proj(U):
            U = U.copy()
            U[:, 9:] = 0
            return U

        a = simulate_batch(big, u0.coeffs[None], [0], post_step=proj).final[0]
        b = simulate_batch(small, u0.coeffs[None, :9], [0]).final[0]
        np.testing.assert_allclose(a[:9], b, atol=1e-12)

    def test_large_jumps_interlaced(self):
        c = cfg(levy=LevySpec(large_rate=3.0), horizon=2.0, seed=4,
                preset=CoefficientPreset(large_kind="additive_mark"))
        rec = run(c)
        streams = path_streams(4, 0)
        _, (tl, ml) = sample_jump_arrays(replace(c.levy, rate=0.0), 2.0, streams["jumps"], streams["large"])
        assert len(rec.jump_log) == tl.size > 0
        assert [e.time for e in rec.jump_log] == tl.tolist()
        assert all(e.is_large and abs(e.mark) >= 1 for e in rec.jump_log)
        assert set(tl.tolist()) <= set(rec.times.tolist())
        assert np.all(np.diff(rec.times) >= 0)

    def test_first_large_jump_shift(self):
        # from rest with only dispersion, the state just after the first large
        # jump is xi * (rotated sin), whose L2 norm is |xi| sqrt(pi)
        model = ModelParams(galerkin_dim=16, nonlinear=False)
        c = cfg(model=model, levy=LevySpec(large_rate=1.0), horizon=5.0, dt=0.5, seed=1,
                preset=CoefficientPreset(large_kind="additive_mark"),
                initial_condition=InitialCondition())
        rec = run(c)
        assert rec.jump_log
        first = rec.jump_log[0]
        idx = int(np.flatnonzero(rec.times == first.time)[-1])
        assert rec.l2_norm[idx] == pytest.approx(abs(first.mark) * np.sqrt(np.pi), rel=1e-12)
        assert np.all(rec.l2_norm[rec.times < first.time] == 0.0)

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_blow_up(self):
        c = cfg(model=ModelParams(galerkin_dim=16), dt=0.1, horizon=50.0, cutoff_radius=math.inf,
                initial_condition=InitialCondition("random_hs", amp=1e3, s=0.0))
        with pytest.raises(BlowUpError) as info:
            run(c)
        assert info.value.step_index >= 0
        assert isinstance(info.value.record, TrajectoryRecord)
        assert info.value.record.times.size >= 1

    def test_cutoff_prevents_blow_up(self):
        c = cfg(model=ModelParams(galerkin_dim=16), dt=0.1, horizon=5.0, cutoff_radius=10.0,
                initial_condition=InitialCondition("random_hs", amp=1e3, s=0.0))
        assert np.all(np.isfinite(run(c).l2_norm))


class TestEnsemble:
    def test_thread_invariance(self):
        c = cfg(seed=2, **ADDITIVE)
        stacked = lambda U: np.stack([U[:, 1].real, U[:, 2].imag])
        a = run_ensemble(c, 5, threads=1, extra=stacked)
        b = run_ensemble(c, 5, threads=3, extra=stacked)
        assert np.array_equal(a.l2, b.l2) and np.array_equal(a.final, b.final)
        assert np.array_equal(np.array(a.extra), np.array(b.extra))
        assert np.array(b.extra).shape == (a.times.size, 2, 5)

    def test_path_independent_of_batch(self):
        c = cfg(seed=2, levy=LevySpec(rate=2.0), **{
            "wiener": ADDITIVE["wiener"], "preset": replace(ADDITIVE["preset"], k_kind="additive_mark")})
        ens = run_ensemble(c, 4)
        single = run(c, path_index=2)
        np.testing.assert_allclose(ens.final[2], single.final_state.coeffs, rtol=0, atol=1e-14)


class TestCoupled:
    def test_identical_data(self):
        c = cfg(seed=3, **ADDITIVE)
        u = initial_state(c)
        res = run_coupled(c, u, u)
        assert np.all(res.difference == 0.0)

    def test_continuity_in_delta(self):
        c = cfg(horizon=1.0)
        u = initial_state(c)
        sin = SpectralField.from_function(c.grid, np.sin)
        sups = [run_coupled(c, u, u + d * sin).difference.max() / d for d in (1e-2, 5e-3, 2.5e-3)]
        assert max(sups) / min(sups) < 1.2


class TestSerialization:
    def test_csv(self, tmp_path):
        rec = run(cfg(horizon=0.1))
        rec.to_csv(tmp_path / "t.csv")
        rows = list(csv.reader(open(tmp_path / "t.csv")))
        assert rows[0] == ["t", "l2", "h1", "h2", "i0", "i1", "i2"]
        assert len(rows) == rec.times.size + 1
        assert float(rows[-1][1]) == rec.l2_norm[-1]

    def test_snapshot(self, tmp_path):
        u = random_field(TorusGrid(12), np.random.default_rng(0))
        write_state_snapshot(u, tmp_path / "s.bin")
        raw = (tmp_path / "s.bin").read_bytes()
        assert len(raw) == 4 + 16 * 13
        assert int.from_bytes(raw[:4], "little") == 12
        back = read_state_snapshot(tmp_path / "s.bin")
        assert np.array_equal(back.coeffs, u.coeffs)


class TestConvergence:
    def test_levels(self):
        with pytest.raises(ConfigurationError):
            self_convergence(cfg(), refinement_levels=2)

    def test_deterministic_report(self):
        res = self_convergence(cfg(dt=0.02, horizon=1.0), refinement_levels=3, paths=1)
        d = res.as_dict()
        assert d["monotone"] and d["warning"] is None
        assert res.dts.tolist() == [0.02, 0.01, 0.005]
        assert 0.8 < res.slope < 1.2
