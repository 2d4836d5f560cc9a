"""Long-time diagnostics (dissipation margins, H2 growth, tightness curve,
time averages from two starts) for one configuration.

    python3 scripts/ergodic_study.py --config configs/ergodic.toml --paths 100
"""

import argparse
from pathlib import Path

from skdv.config import parse_config
from skdv.ergodic import ErgodicConfig, ergodic_diagnostics

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=str(CONFIGS / "ergodic.toml"))
    ap.add_argument("--paths", type=int, default=100)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    rc = parse_config(args.config)
    e = rc.experiment
    ecfg = ErgodicConfig(rc.sim, e.observables, e.radii, e.burn_in, e.window)
    r = ergodic_diagnostics(ecfg, args.paths, args.threads)

    print(f"kappa1={r['kappa1']:.4g} kappa2={r['kappa2']:.4g}")
    for p, d in r["eta"].items():
        print(f"  p={p}: C~={d['c_tilde']:<5} eta={d['eta_p']:.4g} eta''={d['eta_pp']:.4g}")
    g = r["linear_growth"]
    print(f"H2 growth: slope={g['slope']:.4g} residual={g['relative_residual']:.2%} of range")
    t = r["tightness"]
    print("tightness:")
    for R, s, c in zip(t["radii"], t["statistic"], t["chebyshev"]):
        print(f"  R={R:<8g} statistic={s:.4f} chebyshev={c:.4f}")
    print("time averages after burn-in:")
    for name, v in r["time_average"].items():
        print(f"  {name}: {v['burn_in_mean']:.5g} +- {v['burn_in_standard_error']:.2g}")
    s = r["two_start"]
    print(f"two starts: zero {s['zero']:.5g}, sin(x) {s['other']:.5g}, agree={s['agree']}")


if __name__ == "__main__":
    main()
