"""Command-line entry point: figures {heatmap, cuts}."""

from __future__ import annotations

import argparse
import sys

from .plots import render_cuts, render_heatmap
from .table import TableError


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figures", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    heat = sub.add_parser("heatmap", help="phase-diagram heatmap from a sweep CSV")
    heat.add_argument("--in", dest="csv", required=True)
    heat.add_argument("--out", required=True)

    cuts = sub.add_parser("cuts", help="line cuts with 2-stderr bands")
    cuts.add_argument("--in", dest="csv", required=True)
    cuts.add_argument("--out", required=True)
    cuts.add_argument("--g", type=_float_list, help="comma list of g values (cut versus sigma)")
    cuts.add_argument("--sigma", type=_float_list, help="comma list of sigma values (cut versus g)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "heatmap":
            render_heatmap(args.csv, args.out)
        else:
            render_cuts(args.csv, args.out, g_values=args.g, sigma_values=args.sigma)
    except (TableError, OSError) as exc:
        print(f"figures: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
