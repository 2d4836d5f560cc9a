"""Stationary L2 level against the closed form for a range of damping rates.

    python3 scripts/balance_study.py --gammas 1 2 4 --paths 200
"""

import argparse
from dataclasses import replace
from pathlib import Path

from skdv.config import parse_config
from skdv.dynamics import ModelParams
from skdv.estimates import stationary_balance_test

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=str(CONFIGS / "balance.toml"))
    ap.add_argument("--gammas", type=float, nargs="+", default=[1.0, 2.0, 4.0])
    ap.add_argument("--paths", type=int, default=200)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    base = parse_config(args.config).sim
    print(f"{'gamma':>6} {'level':>10} {'measured':>10} {'se':>9} {'rel_err':>8}")
    for g in args.gammas:
        model = ModelParams(gamma=g, epsilon=base.model.epsilon, galerkin_dim=base.model.galerkin_dim,
                            nonlinear=base.model.nonlinear)
        r = stationary_balance_test(replace(base, model=model), args.paths, args.threads)
        print(f"{g:6.2f} {r['level']:10.5f} {r['measured']:10.5f} {r['standard_error']:9.2e} "
              f"{r['relative_error']:8.2%}")


if __name__ == "__main__":
    main()
