"""Pathwise stability: sup_t |u_a - u_b| / delta over seeds and perturbation sizes.

    python3 scripts/stability_study.py --deltas 1e-2 1e-3 1e-4 --seeds 10
"""

import argparse
from pathlib import Path

from skdv.config import parse_config
from skdv.estimates import stability_experiment

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default=str(CONFIGS / "balance.toml"))
    ap.add_argument("--deltas", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()
    r = stability_experiment(parse_config(args.config).sim, args.deltas, range(args.seeds))
    for delta, v in r["by_delta"].items():
        if "max" in v:
            print(f"delta={delta:<8} max={v['max']:.4g} min={v['min']:.4g} spread={v['spread']:.3g}")
        else:
            print(f"delta={delta:<8} max_difference={v['max_difference']:.3g}")


if __name__ == "__main__":
    main()
