#!/usr/bin/env python3
"""Run the (sigma, g) sweep at desk scale or full scale and render the figures.

Desk scale (default) finishes in a few hours on a workstation:
    python scripts/run_sweep.py --out results/desk

Full scale reproduces the published phase diagram and is an overnight job:
    python scripts/run_sweep.py --full --out results/full

Rendering afterwards (needs the qedlat-figures package):
    figures heatmap --in results/desk/sweep.csv --out results/desk/fig_heatmap.png
    figures cuts --in results/desk/sweep.csv --g 0.1,0.5,1.75 --out results/desk/fig_cuts_g.png
    figures cuts --in results/desk/sweep.csv --sigma 0,0.35,2 --out results/desk/fig_cuts_sigma.png
"""

import argparse
import os
import sys

from qedlat.cli import main as qedlat_main

DESK = {
    "cavities": 601,
    "realizations": 200,
    "sigma_grid": "0,0.1,0.2,0.35,0.5,0.75,1,1.5,2",
    "g_grid": "0.05,0.1,0.25,0.5,0.75,1,1.25,1.5,1.75,2,2.5",
}

FULL = {
    "cavities": 2001,
    "realizations": 4000,
    "sigma_grid": DESK["sigma_grid"],
    "g_grid": DESK["g_grid"],
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="overnight full-scale run")
    parser.add_argument("--out", default="results/desk")
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    params = FULL if args.full else DESK
    return qedlat_main(
        [
            "sweep",
            "--sigma", params["sigma_grid"],
            "--g", params["g_grid"],
            "--cavities", str(params["cavities"]),
            "--realizations", str(params["realizations"]),
            "--seed", str(args.seed),
            "--workers", str(args.workers),
            "--out", args.out,
        ]
    )


if __name__ == "__main__":
    sys.exit(main())
