"""Command-line runner: ``skdv <experiment> --config FILE --out DIR``.

Each run directory receives ``resolved-config.toml``, a JSON report keyed by
the experiment name, CSV time series where applicable, and ``run.log``.
Exit status: 0 success, 1 configuration error, 2 blow-up, 3 failed --assert.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import ergodic, estimates
from .config import ConfigError, RunConfig, parse_config, write_resolved
from .integrator import BlowUpError, TrajectoryRecord, run, self_convergence, write_state_snapshot
from .noise import dump_jump_events, validate_assumptions
from .spectral import ConfigurationError

EXPERIMENTS = ("simulate", "decay", "conservation", "moments", "balance", "convergence",
               "stability", "ergodic", "tightness", "audit", "validate-noise")

log = logging.getLogger("skdv")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else repr(f)
    return obj


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) for v in row])


# --- experiments ----------------------------------------------------------
# each returns (report dict, summary line, passed flag)


def _simulate(rc: RunConfig, out: Path, threads: int):
    rec = run(rc.sim)
    rec.to_csv(out / "trajectory.csv")
    write_state_snapshot(rec.final_state, out / "final_state.bin")
    dump_jump_events(rec.jump_log, out / "jumps.bin")
    report = {"final_l2": float(rec.l2_norm[-1]), "final_h1": float(rec.h1_norm[-1]),
              "final_h2": float(rec.h2_norm[-1]), "large_jumps": len(rec.jump_log),
              "records": int(rec.times.size)}
    return report, f"final_l2={rec.l2_norm[-1]:.6g} records={rec.times.size}", True


def _decay(rc, out, threads):
    run(rc.sim, functionals=False).to_csv(out / "trajectory.csv")
    r = estimates.decay_test(rc.sim)
    line = f"fitted_rate={r['fitted_rate']:.4f} expected={r['expected_rate']!r}"
    return r, line, r["passed"]


def _conservation(rc, out, threads):
    run(rc.sim).to_csv(out / "trajectory.csv")
    r = estimates.conservation_test(rc.sim)
    d = r["drift"]
    tol = rc.experiment.drift_tolerance
    ok = all(v < tol for v in d.values())
    line = " ".join(f"drift_{k}={v:.3e}" for k, v in d.items())
    return r, line, ok


def _moments(rc, out, threads):
    led = estimates.moment_sweep(rc.sim, rc.experiment.p_values, rc.experiment.paths or 100, threads)
    header = ["t"] + [f"sup_l2_p{p}" for p in led.p_values] + [f"se_p{p}" for p in led.p_values] \
        + ["d2_energy", "d2_energy_se"]
    cols = [led.times] + [led.sup_moments[p] for p in led.p_values] \
        + [led.sup_moments_se[p] for p in led.p_values] + [led.d2_energy, led.d2_energy_se]
    _write_csv(out / "moments.csv", header, zip(*cols))
    p0 = led.p_values[0]
    line = f"E_sup_l2^{p0}(T)={led.sup_moments[p0][-1]:.6g} non_finite={led.non_finite}"
    return led.as_dict(), line, led.non_finite == 0


def _balance(rc, out, threads):
    r = estimates.stationary_balance_test(rc.sim, rc.experiment.paths or 200, threads,
                                          rc.experiment.tolerance)
    line = f"measured={r['measured']:.6g} level={r['level']:.6g} rel_error={r['relative_error']:.3%}"
    return r, line, r["passed"]


def _convergence(rc, out, threads):
    e = rc.experiment
    res = self_convergence(rc.sim, e.refinement_levels, e.paths or 32, e.reference_extra)
    _write_csv(out / "convergence.csv", ["dt", "error"], zip(res.dts, res.errors))
    r = res.as_dict()
    ok = res.monotone
    if e.expected_slope is not None:
        ok &= abs(res.slope - e.expected_slope) <= e.slope_tolerance
    return r, f"slope={res.slope:.3f} monotone={res.monotone}", ok


def _stability(rc, out, threads):
    e = rc.experiment
    r = estimates.stability_experiment(rc.sim, e.deltas, range(e.seeds))
    worst = max(v.get("max", 0.0) for v in r["by_delta"].values())
    return r, f"max_ratio={worst:.4g} bound={e.ratio_bound:g}", worst <= e.ratio_bound


def _ergodic_cfg(rc):
    e = rc.experiment
    return ergodic.ErgodicConfig(rc.sim, e.observables, e.radii, e.burn_in, e.window)


def _ergodic(rc, out, threads):
    r = ergodic.ergodic_diagnostics(_ergodic_cfg(rc), rc.experiment.paths or 100, threads)
    g, t = r["linear_growth"], r["tightness"]
    _write_csv(out / "growth.csv", ["t", "integrated_h2_energy"], zip(g.pop("times"), g.pop("curve")))
    _write_csv(out / "tightness.csv", ["R", "statistic", "chebyshev"],
               zip(t["radii"], t["statistic"], t["chebyshev"]))
    eta8 = r["eta"][8]["eta_p"]
    ok = (eta8 > 0 and g["relative_residual"] < 0.05 and t["non_increasing"]
          and t["below_chebyshev_samplewise"] and t["statistic"][-1] < 0.05)
    line = (f"eta8={eta8:.4g} growth_slope={g['slope']:.4g} "
            f"residual={g['relative_residual']:.3%} tightness_at_Rmax={t['statistic'][-1]:.4g}")
    return r, line, ok


def _tightness(rc, out, threads):
    r = ergodic.tightness_statistic(_ergodic_cfg(rc), rc.experiment.paths or 50, threads)
    _write_csv(out / "tightness.csv", ["R", "statistic", "chebyshev"],
               zip(r["radii"], r["statistic"], r["chebyshev"]))
    ok = r["non_increasing"] and r["below_chebyshev_samplewise"]
    return r, f"statistic_at_Rmax={r['statistic'][-1]:.4g}", ok


def _audit(rc, out, threads):
    r = estimates.inequality_audit(rc.experiment.sample_count, rc.sim.grid,
                                   np.random.default_rng(rc.sim.seed))
    c = r["constants"]
    return r, f"agmon={c['agmon']:.4g} stable={r['stable']}", r["stable"] and r["finite"]


def _validate_noise(rc, out, threads):
    s = rc.sim
    rep = validate_assumptions(s.preset, s.wiener, s.levy, s.grid, rc.experiment.sample_count,
                               np.random.default_rng(s.seed), rc.experiment.tolerance)
    line = f"kappa1={rep.kappa1:.4g} kappa2={rep.kappa2:.4g} passed={rep.passed}"
    return rep.as_dict(), line, rep.passed


_DISPATCH = {
    "simulate": _simulate, "decay": _decay, "conservation": _conservation,
    "moments": _moments, "balance": _balance, "convergence": _convergence,
    "stability": _stability, "ergodic": _ergodic, "tightness": _tightness,
    "audit": _audit, "validate-noise": _validate_noise,
}


# --- entry point ----------------------------------------------------------


def _threads(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get("SKDV_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise ConfigError(f"SKDV_THREADS must be an integer, got {env!r}") from None


def _setup_log(out: Path) -> logging.Handler:
    handler = logging.FileHandler(out / "run.log", mode="w")
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    return handler


def dispatch(experiment: str, rc: RunConfig, out: Path, threads: int = 1,
             assert_pass: bool = False) -> int:
    """Run one experiment into ``out``; return the exit status."""
    out.mkdir(parents=True, exist_ok=True)
    write_resolved(rc, out / "resolved-config.toml")
    handler = _setup_log(out)
    try:
        log.info("experiment=%s seed=%d threads=%d", experiment, rc.sim.seed, threads)
        start = time.perf_counter()
        try:
            report, line, passed = _DISPATCH[experiment](rc, out, threads)
        except BlowUpError as err:
            log.error("blow-up at step %d", err.step_index)
            if isinstance(err.record, TrajectoryRecord):
                err.record.to_csv(out / "partial_trajectory.csv")
            _dump(out, experiment, {"error": "blow-up", "step_index": err.step_index})
            print(f"blow-up at step {err.step_index}")
            return 2
        elapsed = time.perf_counter() - start
        report = dict(report, passed=bool(passed), elapsed_seconds=elapsed)
        _dump(out, experiment, report)
        log.info("%s (%.2fs)", line, elapsed)
        print(line)
        if assert_pass and not passed:
            log.error("acceptance check failed")
            return 3
        return 0
    finally:
        log.removeHandler(handler)
        handler.close()


def _dump(out: Path, experiment: str, report: dict) -> None:
    with open(out / f"{experiment}.json", "w") as fh:
        json.dump({experiment: _jsonable(report)}, fh, indent=2)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skdv", description="Damped stochastic KdV experiments.")
    ap.add_argument("experiment", help="one of: " + ", ".join(EXPERIMENTS))
    ap.add_argument("--config", required=True, help="TOML run configuration")
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--seed", type=int, default=None, help="override the configured seed")
    ap.add_argument("--paths", type=int, default=None, help="override the path count")
    ap.add_argument("--threads", type=int, default=None, help="worker threads (env SKDV_THREADS)")
    ap.add_argument("--assert", dest="assert_pass", action="store_true",
                    help="exit 3 when the experiment's acceptance check fails")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.experiment not in EXPERIMENTS:
        print(f"error: unknown experiment {args.experiment!r}; choose from {', '.join(EXPERIMENTS)}",
              file=sys.stderr)
        return 1
    try:
        rc = parse_config(args.config).with_overrides(args.seed, args.paths)
        threads = _threads(args.threads)
        return dispatch(args.experiment, rc, Path(args.out), threads, args.assert_pass)
    except (ConfigError, ConfigurationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
