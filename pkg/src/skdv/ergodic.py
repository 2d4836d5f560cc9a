"""Long-time statistics: semigroup sampling, Cesaro time averages, the
escape-probability (tightness) statistic and the dissipation margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from .integrator import InitialCondition, SimConfig, run_ensemble
from .noise import AssumptionReport, validate_assumptions
from .functionals import i2_array
from .spectral import ConfigurationError, SpectralField, hs_norm_array

# --- observables ----------------------------------------------------------


def _obs_l2_sq(U, grid):
    return hs_norm_array(U, 0.0) ** 2


def _obs_h2_sq(U, grid):
    return hs_norm_array(U, 2.0) ** 2


def _obs_i2(U, grid):
    return i2_array(U, grid.quadrature_points)


def _obs_re_u1(U, grid):
    return U[..., 1].real


def _obs_im_u1(U, grid):
    return U[..., 1].imag


OBSERVABLES: dict[str, Callable] = {
    "l2_sq": _obs_l2_sq,
    "h2_sq": _obs_h2_sq,
    "i2": _obs_i2,
    "re_u1": _obs_re_u1,
    "im_u1": _obs_im_u1,
}


def observable(name: str) -> Callable:
    try:
        return OBSERVABLES[name]
    except KeyError:
        raise ConfigurationError(f"unknown observable {name!r}; known: {sorted(OBSERVABLES)}") from None


@dataclass(frozen=True)
class ErgodicConfig:
    base: SimConfig
    observables: tuple[str, ...] = ("l2_sq", "h2_sq")
    radii: tuple[float, ...] = (0.25, 0.5, 1.0, 2.0, 4.0)
    burn_in: float = 0.0
    # length of the post-burn-in averaging window; None runs to the horizon
    window: float | None = None

    def __post_init__(self):
        for name in self.observables:
            observable(name)
        if not self.radii:
            raise ConfigurationError("radii must be nonempty")
        r = np.asarray(self.radii, dtype=float)
        if np.any(r <= 0) or np.any(np.diff(r) <= 0):
            raise ConfigurationError("radii must be positive and increasing")
        if not 0 <= self.burn_in < self.base.horizon:
            raise ConfigurationError("burn_in < horizon required")
        if self.window is not None and not 0 < self.window <= self.base.horizon - self.burn_in:
            raise ConfigurationError("0 < window <= horizon - burn_in required")

    @property
    def window_end(self) -> float:
        return self.base.horizon if self.window is None else self.burn_in + self.window


# --- dissipation margins --------------------------------------------------


@dataclass
class DissipationReport:
    p: int
    c_tilde: int
    eta_p: float
    eta_pp: float
    positive_p: bool
    positive_pp: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def c_tilde(p: int) -> int:
    """(p^2 - p) 2^{p-3}, exact for even p >= 2."""
    num = (p * p - p) * 2**p
    return num // 8


def eta_threshold(gamma: float, kappa1: float, kappa2: float, p: int) -> DissipationReport:
    """eta(p) = gamma p - (p(p-1) kappa1 + 3 C_p kappa2), eta'' = 197/50 gamma - kappa1 - kappa2."""
    if p not in (2, 4, 6, 8):
        raise ConfigurationError("p must be one of 2, 4, 6, 8")
    c = c_tilde(p)
    eta_p = gamma * p - (p * (p - 1) * kappa1 + 3 * c * kappa2)
    eta_pp = 197.0 / 50.0 * gamma - kappa1 - kappa2
    return DissipationReport(p, c, eta_p, eta_pp, eta_p > 0, eta_pp > 0)


# --- ensemble plumbing ----------------------------------------------------


def _mean_se(x: np.ndarray):
    x = np.asarray(x, dtype=float)
    se = x.std(ddof=1) / math.sqrt(x.size) if x.size > 1 else 0.0
    return float(x.mean()), float(se)


def _sample_observables(cfg: SimConfig, names, path_count: int, u0: SpectralField | None,
                        threads: int):
    """Observables at every record time, each of shape (n_records, paths)."""
    grid = cfg.grid
    fns = [observable(n) for n in names]
    rec = run_ensemble(cfg, path_count, u0=u0, threads=threads,
                       extra=lambda U: np.stack([f(U, grid) for f in fns]))
    stacked = np.array(rec.extra)  # (n_rec, n_obs, P)
    return rec.times, {n: stacked[:, i, :] for i, n in enumerate(names)}


def cesaro_average(times, values, a, b):
    """Trapezoidal (1/(b-a)) int_a^b per path; a, b must lie on the record grid."""
    sel = (times >= a - 1e-12) & (times <= b + 1e-12)
    t = times[sel]
    if t.size < 2:
        raise ConfigurationError("averaging window contains fewer than two record times")
    return trapezoid(values[sel], t, axis=0) / (t[-1] - t[0])


# --- semigroup ------------------------------------------------------------


def semigroup_estimate(cfg: SimConfig, u0: SpectralField, t: float, phi, path_count: int = 100,
                       ceiling: float = 1e6, threads: int = 1) -> dict:
    """Monte Carlo P_t phi(u0) = E phi(u(t; u0)) with |phi| clipped at ``ceiling``.

    ``phi`` is an observable name or a callable on (paths, N+1) coefficient arrays.
    """
    fn = observable(phi) if isinstance(phi, str) else (lambda U, grid: phi(U))
    if t == 0:
        v = float(np.clip(fn(u0.coeffs[None, :], cfg.grid)[0], -ceiling, ceiling))
        return {"mean": v, "standard_error": 0.0, "clipped": 0, "paths": path_count}
    c = replace(cfg, horizon=t, record_stride=10**9)
    rec = run_ensemble(c, path_count, u0=u0, threads=threads)
    vals = np.asarray(fn(rec.final, cfg.grid), dtype=float)
    clipped = int(np.sum(np.abs(vals) > ceiling))
    mean, se = _mean_se(np.clip(vals, -ceiling, ceiling))
    return {"mean": mean, "standard_error": se, "clipped": clipped, "paths": path_count}


def l2_mean_ode(u0_l2_sq: float, gamma: float, level: float, t):
    """E|u(t)|^2 = e^{-2 gamma t} |u0|^2 + level (1 - e^{-2 gamma t}) for u-independent noise."""
    decay = np.exp(-2.0 * gamma * np.asarray(t, dtype=float))
    return decay * u0_l2_sq + level * (1.0 - decay)


# --- time averages --------------------------------------------------------


def _time_average_from(ecfg: ErgodicConfig, times, series) -> dict:
    out = {}
    T = ecfg.base.horizon
    for name, vals in series.items():
        full = cesaro_average(times, vals, 0.0, T)
        late = cesaro_average(times, vals, ecfg.burn_in, ecfg.window_end)
        m, se = _mean_se(full)
        mb, seb = _mean_se(late)
        out[name] = {"mean": m, "standard_error": se, "burn_in_mean": mb, "burn_in_standard_error": seb}
    return out


def time_average(ecfg: ErgodicConfig, path_count: int = 50, u0: SpectralField | None = None,
                 threads: int = 1) -> dict:
    """Cesaro averages (1/T) int_0^T phi(u) dt and the burn-in window variant."""
    if ecfg.base.horizon < 2 * ecfg.burn_in:
        raise ConfigurationError("horizon >= 2 * burn_in required")
    times, series = _sample_observables(ecfg.base, ecfg.observables, path_count, u0, threads)
    return _time_average_from(ecfg, times, series)


# --- tightness ------------------------------------------------------------


def _tightness_from(radii, times, h2):
    """Per-path (1/T) int 1{|u|_{H^2} > R} dt and its Chebyshev line (1/T) int |u|^2_{H^2} dt / R^2."""
    T = times[-1] - times[0]
    energy = trapezoid(h2**2, times, axis=0) / T
    stat = np.array([trapezoid((h2 > R).astype(float), times, axis=0) / T for R in radii])
    cheb = np.array([energy / R**2 for R in radii])
    return stat, cheb


def _tightness_report(radii, stat, cheb) -> dict:
    mean = stat.mean(axis=1)
    return {
        "radii": list(map(float, radii)),
        "statistic": mean.tolist(),
        "standard_error": (stat.std(axis=1, ddof=1) / math.sqrt(stat.shape[1])).tolist()
        if stat.shape[1] > 1 else [0.0] * len(radii),
        "chebyshev": cheb.mean(axis=1).tolist(),
        "non_increasing": bool(np.all(np.diff(mean) <= 0)),
        "below_chebyshev_samplewise": bool(np.all(stat <= cheb + 1e-12)),
    }


def tightness_statistic(ecfg: ErgodicConfig, path_count: int = 50, threads: int = 1) -> dict:
    """Escape-probability statistic per radius, started from u0 = 0."""
    if ecfg.base.initial_condition.kind != "zero":
        raise ConfigurationError("tightness_statistic requires the zero initial condition")
    times, series = _sample_observables(ecfg.base, ("h2_sq",), path_count, None, threads)
    stat, cheb = _tightness_from(ecfg.radii, times, np.sqrt(series["h2_sq"]))
    return _tightness_report(ecfg.radii, stat, cheb)


# --- linear growth --------------------------------------------------------


def _cumulative(times, mean_curve):
    inc = 0.5 * (mean_curve[1:] + mean_curve[:-1]) * np.diff(times)
    return np.concatenate([[0.0], np.cumsum(inc)])


def _linear_growth_from(times, h2_sq) -> dict:
    curve = _cumulative(times, h2_sq.mean(axis=1))
    T = times[-1]
    sel = times >= T / 2 - 1e-12
    t, y = times[sel], curve[sel]
    b, a = np.polyfit(t, y, 1)
    resid = float(np.max(np.abs(y - (a + b * t))))
    span = float(y.max() - y.min())
    return {
        "slope": float(b),
        "intercept": float(a),
        "max_residual": resid,
        "range": span,
        "relative_residual": resid / span if span > 0 else 0.0,
        "curve": curve.tolist(),
        "times": times.tolist(),
    }


def _kappas(cfg: SimConfig, assumptions: AssumptionReport | None) -> AssumptionReport:
    if assumptions is not None:
        return assumptions
    return validate_assumptions(cfg.preset, cfg.wiener, cfg.levy, cfg.grid, sample_count=100)


def linear_growth_check(cfg: SimConfig, path_count: int = 100, threads: int = 1,
                        assumptions: AssumptionReport | None = None) -> dict:
    """Fit a + b t to int_0^t E|u(s)|^2_{H^2} ds on [T/2, T]."""
    rep = _kappas(cfg, assumptions)
    eta = eta_threshold(cfg.model.gamma, rep.kappa1, rep.kappa2, 8)
    times, series = _sample_observables(cfg, ("h2_sq",), path_count, None, threads)
    out = _linear_growth_from(times, series["h2_sq"])
    out["eta8"] = eta.eta_p
    out["warning"] = None if eta.positive_p else "eta(8) <= 0: time-uniform bounds not guaranteed"
    return out


# --- diagnostic bundle ----------------------------------------------------


def two_start_agreement(ecfg: ErgodicConfig, path_count: int = 50, threads: int = 1,
                        other: InitialCondition | None = None) -> dict:
    """Burn-in averages of |u|^2_{L^2} from u0 = 0 and from sin(x)."""
    other = InitialCondition("single_mode", k=1, amp=1.0) if other is None else other
    res = []
    for ic in (InitialCondition("zero"), other):
        base = replace(ecfg.base, initial_condition=ic)
        times, series = _sample_observables(base, ("l2_sq",), path_count, None, threads)
        res.append(_mean_se(cesaro_average(times, series["l2_sq"], ecfg.burn_in, ecfg.window_end)))
    (m0, s0), (m1, s1) = res
    combined = math.hypot(s0, s1)
    return {"zero": m0, "zero_se": s0, "other": m1, "other_se": s1,
            "agree": bool(abs(m0 - m1) <= 3.0 * combined)}


def ergodic_diagnostics(ecfg: ErgodicConfig, path_count: int = 100, threads: int = 1,
                        assumptions: AssumptionReport | None = None,
                        two_start: bool = True) -> dict:
    """Quantitative surrogates for existence of an invariant measure, from one run.

    Reported as a bundle, not a verdict: eta positivity, linear growth of the
    integrated H^2 energy, decay of the tightness statistic in R, and
    (optionally) agreement of long-time averages from two starts.
    """
    cfg = ecfg.base
    if cfg.initial_condition.kind != "zero":
        raise ConfigurationError("ergodic diagnostics start from u0 = 0")
    rep = _kappas(cfg, assumptions)
    eta = {p: eta_threshold(cfg.model.gamma, rep.kappa1, rep.kappa2, p).as_dict() for p in (2, 4, 6, 8)}
    names = tuple(dict.fromkeys(("h2_sq",) + tuple(ecfg.observables)))
    times, series = _sample_observables(cfg, names, path_count, None, threads)
    growth = _linear_growth_from(times, series["h2_sq"])
    stat, cheb = _tightness_from(ecfg.radii, times, np.sqrt(series["h2_sq"]))
    out = {
        "kappa1": rep.kappa1,
        "kappa2": rep.kappa2,
        "eta": eta,
        "linear_growth": growth,
        "tightness": _tightness_report(ecfg.radii, stat, cheb),
        "time_average": _time_average_from(ecfg, times, {n: series[n] for n in ecfg.observables}),
    }
    if two_start:
        out["two_start"] = two_start_agreement(ecfg, path_count, threads)
    return out
