"""Sectioned TOML run configuration: parsing, validation and the resolved echo.

Layout (every key optional unless noted)::

    seed = 42
    noise = "off"                 # or give the [noise.*] tables instead

    [model]     gamma, epsilon, n_modes, nonlinear, cutoff_radius
    [grid]      n_points
    [time]      dt, horizon, record_stride
    [initial]   kind, k, amp, phase, width, center, s, seed
    [noise.wiener]   q
    [noise.jumps]    rate, mark, large_rate, large_mark, interlace
    [noise.presets]  g_kind, sigma, beta_g, coupling_direction,
                     k_kind, psi, beta_k, large_kind, large_psi, beta_large
    [experiment]     see ExperimentParams
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .dynamics import ModelParams
from .integrator import InitialCondition, SimConfig
from .noise import CoefficientPreset, LevySpec, MarkDistribution, WienerSpec
from .spectral import ConfigurationError


class ConfigError(ConfigurationError):
    """Unreadable, malformed or invalid run configuration."""


@dataclass(frozen=True)
class ExperimentParams:
    # None: the experiment's own default
    paths: int | None = None
    p_values: tuple[int, ...] = (2, 4, 6, 8)
    refinement_levels: int = 4
    reference_extra: int = 4
    deltas: tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    seeds: int = 10
    ratio_bound: float = 10.0
    radii: tuple[float, ...] = (0.25, 0.5, 1.0, 2.0, 4.0)
    burn_in: float = 0.0
    window: float | None = None
    observables: tuple[str, ...] = ("l2_sq", "h2_sq")
    sample_count: int = 200
    tolerance: float = 0.10
    drift_tolerance: float = 1e-5
    expected_slope: float | None = None
    slope_tolerance: float = 0.2

    def __post_init__(self):
        if self.paths is not None and self.paths < 1:
            raise ConfigError("experiment.paths >= 1 required")
        if self.seeds < 1:
            raise ConfigError("experiment.seeds >= 1 required")


@dataclass(frozen=True)
class RunConfig:
    sim: SimConfig
    experiment: ExperimentParams

    def with_overrides(self, seed: int | None = None, paths: int | None = None) -> "RunConfig":
        sim = self.sim if seed is None else replace(self.sim, seed=seed)
        exp = self.experiment if paths is None else replace(self.experiment, paths=paths)
        return RunConfig(sim, exp)


_SCHEMA = {
    "": {"seed", "noise", "model", "grid", "time", "initial", "experiment"},
    "model": {"gamma", "epsilon", "n_modes", "nonlinear", "cutoff_radius"},
    "grid": {"n_points"},
    "time": {"dt", "horizon", "record_stride"},
    "initial": {f.name for f in fields(InitialCondition)},
    "noise": {"wiener", "jumps", "presets"},
    "noise.wiener": {"q"},
    "noise.jumps": {"rate", "mark", "large_rate", "large_mark", "interlace"},
    "noise.jumps.mark": {f.name for f in fields(MarkDistribution)},
    "noise.jumps.large_mark": {f.name for f in fields(MarkDistribution)},
    "noise.presets": {f.name for f in fields(CoefficientPreset)},
    "experiment": {f.name for f in fields(ExperimentParams)},
}


def _check_keys(table: dict, section: str) -> None:
    allowed = _SCHEMA[section]
    for key, val in table.items():
        name = f"{section}.{key}" if section else key
        if key not in allowed:
            raise ConfigError(f"unknown key {name!r}")
        if isinstance(val, dict):
            if name not in _SCHEMA:
                raise ConfigError(f"key {name!r} must not be a table")
            _check_keys(val, name)


def _table(doc: dict, name: str) -> dict:
    val = doc.get(name, {})
    if not isinstance(val, dict):
        raise ConfigError(f"{name!r} must be a table")
    return val


def _build(doc: dict) -> RunConfig:
    _check_keys(doc, "")
    model_t, grid_t, time_t = _table(doc, "model"), _table(doc, "grid"), _table(doc, "time")
    noise = doc.get("noise", {})
    if isinstance(noise, str):
        if noise != "off":
            raise ConfigError("noise must be \"off\" or a table")
        noise = {}
    elif not isinstance(noise, dict):
        raise ConfigError("noise must be \"off\" or a table")
    _check_keys(noise, "noise")

    model = ModelParams(
        gamma=float(model_t.get("gamma", 0.0)),
        epsilon=float(model_t.get("epsilon", 0.0)),
        galerkin_dim=int(model_t.get("n_modes", 32)),
        nonlinear=bool(model_t.get("nonlinear", True)),
    )
    wt = noise.get("wiener", {})
    wiener = WienerSpec(tuple(float(q) for q in wt.get("q", ())))
    jt = noise.get("jumps", {})
    levy_kw = {"rate": float(jt.get("rate", 0.0)), "large_rate": float(jt.get("large_rate", 0.0))}
    if "mark" in jt:
        levy_kw["mark"] = MarkDistribution(**jt["mark"])
    if "large_mark" in jt:
        levy_kw["large_mark"] = MarkDistribution(**jt["large_mark"])
    levy = LevySpec(**levy_kw)
    pt = dict(noise.get("presets", {}))
    for key in ("sigma",):
        if key in pt:
            pt[key] = tuple(float(v) for v in pt[key])
    for key in ("psi", "large_psi"):
        if key in pt:
            pt[key] = tuple((int(k), float(a), float(b)) for k, a, b in pt[key])
    preset = CoefficientPreset(**pt)

    radius = model_t.get("cutoff_radius")
    sim = SimConfig(
        model=model,
        wiener=wiener,
        levy=levy,
        preset=preset,
        dt=float(time_t.get("dt", 1e-3)),
        horizon=float(time_t.get("horizon", 1.0)),
        record_stride=int(time_t.get("record_stride", 1)),
        seed=int(doc.get("seed", 0)),
        initial_condition=InitialCondition(**_table(doc, "initial")),
        n_points=grid_t.get("n_points"),
        cutoff_radius=None if radius is None else float(radius),
        interlace=bool(jt.get("interlace", True)),
    )
    et = dict(_table(doc, "experiment"))
    for key in ("p_values", "deltas", "radii", "observables"):
        if key in et:
            et[key] = tuple(et[key])
    exp = ExperimentParams(**et)
    # resolve the default grid so parsed and echoed configs compare equal
    sim = replace(sim, n_points=sim.grid.n_points)
    return RunConfig(sim, exp)


def parse_config_text(text: str) -> RunConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"parse error: {err}") from None
    try:
        return _build(doc)
    except ConfigError:
        raise
    except (ValueError, TypeError) as err:
        raise ConfigError(f"invalid configuration: {err}") from None


def parse_config(path) -> RunConfig:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text())


# --- resolved echo --------------------------------------------------------


def _mark_dict(m: MarkDistribution) -> dict:
    return {"kind": m.kind, "a": m.a, "b": m.b, "alpha": m.alpha}


def _drop_none(d: dict) -> dict:
    return {k: v for k, v in d.items() if v is not None}


def resolved_dict(rc: RunConfig) -> dict:
    """All settings with defaults filled, in the input layout."""
    s = rc.sim
    doc = {
        "seed": s.seed,
        "model": _drop_none({
            "gamma": s.model.gamma,
            "epsilon": s.model.epsilon,
            "n_modes": s.model.galerkin_dim,
            "nonlinear": s.model.nonlinear,
            "cutoff_radius": s.cutoff_radius,
        }),
        "grid": {"n_points": s.grid.n_points},
        "time": {"dt": s.dt, "horizon": s.horizon, "record_stride": s.record_stride},
        "initial": {f.name: getattr(s.initial_condition, f.name) for f in fields(InitialCondition)},
    }
    if s.noise_off and s.preset == CoefficientPreset():
        doc["noise"] = "off"
    else:
        p = s.preset
        doc["noise"] = {
            "wiener": {"q": list(s.wiener.q_spectrum)},
            "jumps": {
                "rate": s.levy.rate,
                "mark": _mark_dict(s.levy.mark),
                "large_rate": s.levy.large_rate,
                "large_mark": _mark_dict(s.levy.large_mark),
                "interlace": s.interlace,
            },
            "presets": {
                "g_kind": p.g_kind,
                "sigma": list(p.sigma),
                "beta_g": p.beta_g,
                "coupling_direction": p.coupling_direction,
                "k_kind": p.k_kind,
                "psi": [list(t) for t in p.psi],
                "beta_k": p.beta_k,
                "large_kind": p.large_kind,
                "large_psi": [list(t) for t in p.large_psi],
                "beta_large": p.beta_large,
            },
        }
    e = rc.experiment
    doc["experiment"] = _drop_none({
        f.name: (list(v) if isinstance(v := getattr(e, f.name), tuple) else v)
        for f in fields(ExperimentParams)
    })
    return doc


def write_resolved(rc: RunConfig, path) -> None:
    Path(path).write_text(tomli_w.dumps(resolved_dict(rc)))
