"""Quantitative checks along simulated paths: exponential damping, conservation
of I0-I2, moment bounds, the stationary L^2 balance, functional inequalities
and pathwise stability under coupled noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import brentq

from .integrator import (
    SimConfig,
    initial_state,
    run,
    run_coupled,
    run_ensemble,
)
from .noise import hs_norm_sq_G, k_second_moment
from .spectral import (
    ConfigurationError,
    SpectralField,
    TorusGrid,
    derivative_symbol,
    hs_norm_array,
    random_field,
    to_physical,
)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigurationError(msg)


def _mean_se(x: np.ndarray, axis=-1):
    x = np.asarray(x, dtype=float)
    n = x.shape[axis]
    se = x.std(axis=axis, ddof=1) / np.sqrt(n) if n > 1 else np.zeros_like(x.mean(axis=axis))
    return x.mean(axis=axis), se


# --- damping --------------------------------------------------------------


def decay_test(cfg: SimConfig) -> dict:
    """Fit log|u(t)|_{L^2} against t with the noise off; expect slope -gamma."""
    _require(cfg.noise_off, "decay_test needs the noise disabled")
    _require(cfg.model.epsilon == 0.0, "decay_test needs epsilon = 0")
    rec = run(cfg, functionals=False)
    l2 = rec.l2_norm
    gamma = cfg.model.gamma
    if l2[0] == 0.0:
        return {"trivial": True, "fitted_rate": 0.0, "expected_rate": -gamma,
                "deviation": 0.0, "max_relative_error": 0.0, "passed": True}
    t = rec.times
    rate = float(np.polyfit(t, np.log(l2), 1)[0])
    exact = l2[0] * np.exp(-gamma * t)
    rel = float(np.max(np.abs(l2 - exact) / exact))
    return {
        "trivial": False,
        "fitted_rate": rate,
        "expected_rate": -gamma,
        "deviation": abs(rate + gamma),
        "max_relative_error": rel,
        "final_l2": float(l2[-1]),
        "passed": rel < 1e-4,
    }


# --- conservation ---------------------------------------------------------


def _drifts(rec) -> dict:
    out = {}
    for name, series in (("I0", rec.i0), ("I1", rec.i1), ("I2", rec.i2)):
        out[name] = float(np.max(np.abs(series - series[0])) / max(1.0, abs(series[0])))
    return out


def conservation_test(cfg: SimConfig, halving: bool = True) -> dict:
    """Max relative drift max_t |I_m(u(t)) - I_m(u0)| / max(1, |I_m(u0)|).

    With ``halving`` the run is repeated at dt/2 and the drift ratios reported.
    """
    _require(cfg.noise_off, "conservation_test needs the noise disabled")
    _require(cfg.model.gamma == 0.0 and cfg.model.epsilon == 0.0,
             "conservation_test needs gamma = epsilon = 0")
    drift = _drifts(run(cfg))
    report = {"drift": drift}
    if halving:
        half = replace(cfg, dt=cfg.dt / 2, record_stride=2 * cfg.record_stride)
        drift_h = _drifts(run(half))
        report["drift_half_dt"] = drift_h
        report["halving_ratio"] = {
            k: (drift[k] / drift_h[k] if drift_h[k] > 0 else None) for k in drift
        }
    return report


# --- moments --------------------------------------------------------------


@dataclass
class MomentLedger:
    times: np.ndarray
    p_values: list
    sup_moments: dict            # p -> E sup_{s<=t} |u(s)|^p_{L^2}
    sup_moments_se: dict
    d2_energy: np.ndarray        # E |u_xx(t)|^2_{L^2}
    d2_energy_se: np.ndarray
    path_count: int
    non_finite: int = 0

    def as_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "p_values": list(self.p_values),
            "sup_moments": {str(p): v.tolist() for p, v in self.sup_moments.items()},
            "sup_moments_se": {str(p): v.tolist() for p, v in self.sup_moments_se.items()},
            "d2_energy": self.d2_energy.tolist(),
            "d2_energy_se": self.d2_energy_se.tolist(),
            "path_count": self.path_count,
            "non_finite": self.non_finite,
        }


def _d2_energy(U: np.ndarray) -> np.ndarray:
    return hs_norm_array(U * derivative_symbol(U.shape[-1] - 1, 2), 0.0) ** 2


def moment_sweep(cfg: SimConfig, p_values=(2, 4, 6, 8), path_count: int = 100,
                 threads: int = 1) -> MomentLedger:
    """Monte Carlo E sup_{s<=t}|u(s)|^p and E|u_xx(t)|^2 on the record grid.

    The supremum runs over recorded times only, so it bounds the
    continuous-time supremum from below.
    """
    for p in p_values:
        _require(p in (2, 4, 6, 8), "p must be one of 2, 4, 6, 8")
    rec = run_ensemble(cfg, path_count, threads=threads, extra=_d2_energy)
    running = np.maximum.accumulate(rec.l2, axis=0)
    sup_m, sup_se = {}, {}
    for p in p_values:
        sup_m[p], sup_se[p] = _mean_se(running**p, axis=1)
    d2 = np.array(rec.extra)
    d2_m, d2_se = _mean_se(d2, axis=1)
    bad = int(np.sum(~np.isfinite(rec.l2)) + np.sum(~np.isfinite(d2)))
    return MomentLedger(rec.times, list(p_values), sup_m, sup_se, d2_m, d2_se, path_count, bad)


def fit_growth_budget(times: np.ndarray, moments: np.ndarray, baseline: float,
                      fit_until: float = 1.0) -> dict:
    """Smallest C with m(t) <= C e^{C t} baseline for t <= fit_until; test beyond.

    ``baseline`` is E|u0|^p + 1.
    """
    fit = times <= fit_until + 1e-12
    need = moments[fit] / baseline

    def c_for(t, target):
        if target <= 0:
            return 0.0
        f = lambda c: c * math.exp(c * t) - target
        hi = max(1.0, target)
        while f(hi) < 0:
            hi *= 2.0
        return brentq(f, 0.0, hi)

    C = max(c_for(t, m) for t, m in zip(times[fit], need))
    budget = C * np.exp(C * times) * baseline
    test = ~fit
    below = bool(np.all(moments[test] <= budget[test])) if test.any() else True
    return {"C": C, "budget": budget.tolist(), "below_budget": below}


# --- stationary balance ---------------------------------------------------


def balance_level(cfg: SimConfig) -> float:
    """(||G||^2_{HS(U0, L^2)} + int |K|^2_{L^2} d nu) / (2 gamma) for u-independent G, K."""
    grid = cfg.grid
    zero = SpectralField.zeros(grid)
    g = hs_norm_sq_G(cfg.preset, cfg.wiener, zero, 0.0) if cfg.preset.g_kind != "none" else 0.0
    k = k_second_moment(cfg.preset, cfg.levy, zero, 0.0)
    return (g + k) / (2.0 * cfg.model.gamma)


def _check_additive(cfg: SimConfig) -> None:
    p = cfg.preset
    _require(p.g_kind in ("none", "additive") or p.beta_g == 0, "balance needs u-independent G")
    _require(p.k_kind in ("none", "additive_mark") or p.beta_k == 0, "balance needs u-independent K")
    _require(cfg.model.gamma > 0, "balance needs gamma > 0")


def stationary_balance_test(cfg: SimConfig, path_count: int = 200, threads: int = 1,
                            tolerance: float = 0.10) -> dict:
    """Long-time mean of |u|^2_{L^2} over [T/2, T] against the closed-form level."""
    _check_additive(cfg)
    _require(cfg.model.epsilon == 0.0, "balance level assumes epsilon = 0")
    level = balance_level(cfg)
    rec = run_ensemble(cfg, path_count, threads=threads)
    t = rec.times
    win = t >= cfg.horizon / 2
    per_path = trapezoid(rec.l2[win] ** 2, t[win], axis=0) / (t[win][-1] - t[win][0])
    mean, se = _mean_se(per_path)
    rel = abs(mean - level) / level if level > 0 else float(mean)
    return {
        "level": level,
        "measured": float(mean),
        "standard_error": float(se),
        "relative_error": float(rel),
        "passed": bool(rel < tolerance) if level > 0 else bool(mean == 0.0),
        "paths": path_count,
    }


# --- functional inequalities ----------------------------------------------


INTERPOLATION_PAIRS = ((1.25, 0.625), (0.25, 0.125), (1.0 / 3.0, 1.0 / 6.0))


def agmon_ratio(coeffs: np.ndarray, n_fine: int) -> np.ndarray:
    """|v|_inf / (|v|^{1/2} (|v_x| + |v|)^{1/2}); sup norm sampled on ``n_fine`` points."""
    sup = np.max(np.abs(to_physical(coeffs, n_fine)), axis=-1)
    l2 = hs_norm_array(coeffs, 0.0)
    dx = hs_norm_array(coeffs * derivative_symbol(coeffs.shape[-1] - 1, 1), 0.0)
    return sup / np.sqrt(l2 * (dx + l2))


def interpolation_ratio(coeffs: np.ndarray, s: float, weight: float) -> np.ndarray:
    """|v|_{H^s} / (|v|_{L^2}^{1-w} |v|_{H^2}^w) for H^s = [H^2, L^2]_w."""
    return hs_norm_array(coeffs, s) / (
        hs_norm_array(coeffs, 0.0) ** (1.0 - weight) * hs_norm_array(coeffs, 2.0) ** weight)


def _audit_once(grid, sample_count, rng):
    fields = [random_field(grid, rng, s=rng.uniform(0, 3), amplitude=10 ** rng.uniform(-2, 2),
                           band=int(rng.integers(0, grid.n_modes + 1))).coeffs
              for _ in range(sample_count)]
    c = np.array(fields)
    c = c[hs_norm_array(c, 0.0) > 0]
    out = {"agmon": float(agmon_ratio(c, 16 * grid.n_points).max()), "skipped_null": sample_count - len(c)}
    for s, w in INTERPOLATION_PAIRS:
        out[f"H^{s:.4g}=[H2,L2]_{w:.4g}"] = float(interpolation_ratio(c, s, w).max())
    return out


def inequality_audit(sample_count: int = 200, grid: TorusGrid | None = None,
                     rng: np.random.Generator | None = None) -> dict:
    """Largest observed constants for Agmon and the interpolation pairs.

    Null fields are skipped. A second audit with doubled samples checks the
    constants are stable; constants are reported, not compared with theory.
    """
    _require(sample_count >= 100, "sample_count >= 100 required")
    grid = TorusGrid(32) if grid is None else grid
    rng = np.random.default_rng(0) if rng is None else rng
    first = _audit_once(grid, sample_count, rng)
    second = _audit_once(grid, 2 * sample_count, rng)
    keys = [k for k in first if k != "skipped_null"]
    stable = all(abs(first[k] - second[k]) <= 0.1 * max(first[k], second[k]) for k in keys)
    finite = all(math.isfinite(first[k]) and math.isfinite(second[k]) for k in keys)
    return {"constants": first, "constants_doubled": second, "stable": stable, "finite": finite}


# --- pathwise stability ---------------------------------------------------


def perturbation(grid: TorusGrid, delta: float) -> SpectralField:
    return SpectralField.from_function(grid, lambda x: delta * np.sin(x))


def stability_experiment(cfg: SimConfig, delta_list=(1e-2, 1e-3, 1e-4), seeds=range(10),
                         u0: SpectralField | None = None) -> dict:
    """sup_t |u_a - u_b|_{L^2} / delta for u_b(0) = u_a(0) + delta sin(x), same noise."""
    u0 = initial_state(cfg) if u0 is None else u0
    ratios = {}
    for delta in delta_list:
        _require(delta >= 0, "delta must be >= 0")
        ub = u0 + perturbation(cfg.grid, delta)
        ratios[delta] = [float(np.max(run_coupled(cfg, u0, ub, path_index=int(seed)).difference))
                         for seed in seeds]
    summary = {}
    for delta, sups in ratios.items():
        if delta == 0:
            # ratio undefined; the difference itself is the result
            summary[repr(delta)] = {"max_difference": max(sups)}
            continue
        v = np.array(sups) / delta
        summary[repr(delta)] = {
            "ratios": v.tolist(),
            "max": float(v.max()),
            "min": float(v.min()),
            "spread": float(v.max() / v.min()) if v.min() > 0 else math.inf,
        }
    return {"by_delta": summary, "seeds": [int(s) for s in seeds]}
