"""Command-line front end: single runs, ensembles, sweeps, bound-state scans.

All energies are in units of the hopping rate (J = 1 internally), times in
1/J. Floats are written with 17 significant digits so reruns with the same
seed produce byte-identical files.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from pathlib import Path

from . import __version__
from .dynamics import (
    amplitude_trajectory,
    bound_states,
    spectral_data,
    time_grid,
)
from .ensemble import (
    EnsembleConfig,
    max_horizon,
    run_ensemble,
    sweep,
)
from .model import ChainSpec, DisorderSpec, sample_realization
from .nonmarkov import geometric_measure

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    pass


# key -> parser; grids are comma-separated float lists
_SCALAR_KEYS = {
    "sigma": float,
    "g": float,
    "cavities": int,
    "realizations": int,
    "horizon": float,
    "dt": float,
    "seed": int,
    "workers": int,
}
_LIST_KEYS = {"sigma_grid", "g_grid"}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def parse_config(path: str | Path) -> dict:
    """Read a flat key = value config file."""
    cfg: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key in _SCALAR_KEYS:
                cfg[key] = _SCALAR_KEYS[key](value)
            elif key in _LIST_KEYS:
                cfg[key] = [float(v) for v in value.split(",") if v.strip()]
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return cfg


def emit_config(cfg: dict) -> str:
    """Serialize a config dict; parse(emit(cfg)) round-trips exactly."""
    lines = []
    for key in sorted(cfg):
        value = cfg[key]
        if key in _LIST_KEYS:
            lines.append(f"{key} = {','.join(_fmt(v) for v in value)}")
        elif isinstance(value, float):
            lines.append(f"{key} = {_fmt(value)}")
        else:
            lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def _gather(args: argparse.Namespace) -> dict:
    """Merge config file and flags; flags win."""
    cfg = parse_config(args.config) if args.config else {}
    for key in (*_SCALAR_KEYS, *_LIST_KEYS):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if "seed" not in cfg:
        env = os.environ.get("QEDLAT_SEED")
        cfg["seed"] = int(env) if env else 0
    cfg.setdefault("sigma", 0.0)
    cfg.setdefault("g", 0.1)
    cfg.setdefault("cavities", 601)
    cfg.setdefault("realizations", 200)
    cfg.setdefault("workers", os.cpu_count() or 1)
    return cfg


def _chain(cfg: dict, g: float | None = None) -> ChainSpec:
    return ChainSpec(n_cavities=cfg["cavities"], j_hop=1.0, g=cfg["g"] if g is None else g)


def _default_horizon(cfg: dict, chain: ChainSpec) -> float:
    if "horizon" in cfg:
        return cfg["horizon"]
    cap = max_horizon(chain)
    if cap <= 0:
        raise ConfigError(
            "chain too short to derive a horizon; pass --horizon explicitly"
        )
    return cap


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _json_dump(path: Path, obj) -> None:
    _write(path, json.dumps(obj, indent=2) + "\n")


def cmd_single(cfg: dict, out: Path) -> None:
    chain = _chain(cfg)
    horizon = _default_horizon(cfg, chain)
    dis = DisorderSpec(sigma=cfg["sigma"], master_seed=cfg["seed"])
    r = sample_realization(chain, dis, 0)
    data = spectral_data(chain, r)
    times = time_grid(chain, data, horizon, cfg.get("dt"))
    traj = amplitude_trajectory(chain, r, times, data=data)
    measure = geometric_measure(traj)

    rows = ["t,re_alpha,im_alpha,abs_alpha,abs_alpha_pow4"]
    for t, a, m in zip(traj.times, traj.alpha, traj.abs_alpha):
        rows.append(
            f"{_fmt(t)},{_fmt(a.real)},{_fmt(a.imag)},{_fmt(m)},{_fmt(m ** 4)}"
        )
    _write(out / "trajectory.csv", "\n".join(rows) + "\n")
    _json_dump(
        out / "measure.json",
        {
            "n_v": measure.n_v,
            "n_rescaled": measure.n_rescaled,
            "growth_sum": measure.growth_sum,
            "decay_sum": measure.decay_sum,
            "seed": cfg["seed"],
        },
    )


def cmd_ensemble(cfg: dict, out: Path) -> None:
    chain = _chain(cfg)
    horizon = _default_horizon(cfg, chain)
    ens_cfg = EnsembleConfig(
        chain=chain,
        disorder=DisorderSpec(sigma=cfg["sigma"], master_seed=cfg["seed"]),
        n_realizations=cfg["realizations"],
        horizon=horizon,
        dt=cfg.get("dt"),
    )
    result = run_ensemble(ens_cfg, workers=cfg["workers"])

    rows = ["index,n_v,n_rescaled,growth_sum,decay_sum"]
    for i, m in enumerate(result.per_realization):
        rows.append(
            f"{i},{_fmt(m.n_v)},{_fmt(m.n_rescaled)},{_fmt(m.growth_sum)},{_fmt(m.decay_sum)}"
        )
    _write(out / "ensemble.csv", "\n".join(rows) + "\n")
    _json_dump(
        out / "ensemble.json",
        {
            "mean_n": result.mean_n,
            "stderr": result.stderr,
            "n_realizations": result.n_realizations,
            "seed": cfg["seed"],
            "horizon": horizon,
        },
    )


def cmd_sweep(cfg: dict, out: Path) -> None:
    if "sigma_grid" not in cfg or "g_grid" not in cfg:
        raise ConfigError("sweep needs sigma_grid and g_grid (config keys or --sigma/--g lists)")
    chain = _chain(cfg, g=0.0)
    started = datetime.datetime.now(datetime.timezone.utc).isoformat()

    csv_path = out / "sweep.csv"
    _write(csv_path, "sigma,g,mean_n,stderr,m,seed\n")
    cell_rows = []

    def flush(cell) -> None:
        with open(csv_path, "a", newline="\n") as fh:
            fh.write(
                f"{_fmt(cell.sigma)},{_fmt(cell.g)},{_fmt(cell.result.mean_n)},"
                f"{_fmt(cell.result.stderr)},{cell.result.n_realizations},{cell.seed}\n"
            )
        cell_rows.append(
            {
                "sigma_index": cell.sigma_index,
                "g_index": cell.g_index,
                "seed": cell.seed,
                "horizon": cell.horizon,
                "horizon_capped": cell.horizon_capped,
            }
        )

    sweep(
        chain_template=chain,
        sigma_grid=cfg["sigma_grid"],
        g_grid=cfg["g_grid"],
        n_realizations=cfg["realizations"],
        master_seed=cfg["seed"],
        horizon=cfg.get("horizon"),
        dt=cfg.get("dt"),
        workers=cfg["workers"],
        on_cell=flush,
    )
    _json_dump(
        out / "manifest.json",
        {
            "tool": "qedlat",
            "version": __version__,
            "config": {k: cfg[k] for k in sorted(cfg)},
            "master_seed": cfg["seed"],
            "cells": cell_rows,
            "started": started,
            "finished": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    )


def cmd_boundstates(cfg: dict, out: Path) -> None:
    g_values = cfg.get("g_grid") or [cfg["g"]]
    reports = []
    for g in g_values:
        chain = _chain(cfg, g=g)
        r = sample_realization(chain, DisorderSpec(sigma=0.0, master_seed=0), 0)
        report = bound_states(chain, r)
        reports.append(
            {
                "g": g,
                "energies": list(report.energies),
                "weights": list(report.weights),
                "residual_excitation": report.residual_excitation,
            }
        )
    _json_dump(out / "boundstates.json", {"cavities": cfg["cavities"], "reports": reports})


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qedlat", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, grids: bool) -> None:
        p.add_argument("--config", type=str, help="key = value config file")
        if grids:
            p.add_argument("--sigma", dest="sigma_grid", type=_float_list, metavar="LIST")
            p.add_argument("--g", dest="g_grid", type=_float_list, metavar="LIST")
        else:
            p.add_argument("--sigma", type=float)
            p.add_argument("--g", type=float)
        p.add_argument("--cavities", type=int)
        p.add_argument("--realizations", type=int)
        p.add_argument("--horizon", type=float)
        p.add_argument("--dt", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--out", type=Path, default=Path("."))

    for name, grids in (("single", False), ("ensemble", False), ("sweep", True), ("boundstates", True)):
        add_common(sub.add_parser(name), grids)
    return parser


_COMMANDS = {
    "single": cmd_single,
    "ensemble": cmd_ensemble,
    "sweep": cmd_sweep,
    "boundstates": cmd_boundstates,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _gather(args)
        out = args.out
    except (ConfigError, ValueError, OSError) as exc:
        print(f"qedlat: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        _COMMANDS[args.command](cfg, out)
    except (ConfigError, ValueError) as exc:
        print(f"qedlat: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        print(f"qedlat: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
