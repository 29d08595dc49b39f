"""Command-line front end.

Subcommands:
    run         integrate a config or preset, writing EPCS snapshots and
                a plain-text diagnostics summary
    cfl-check   print the stability ratio for a config and PASS/FAIL
    sweep       rerun one config while stepping a named parameter,
                one output directory per value, plus a summary CSV
    export-csv  convert EPCS snapshots to x[,y],re,im CSV rows
    diag        recompute the diagnostics summary from a snapshot dir

The output root defaults to the EPCS_OUT environment variable when set,
else the current directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import config as cfgmod
from .config import ConfigError
from .engine import CflError, EngineError, cfl_ratio, run_simulation
from .diagnostics import peak_report
from .initial import init_state
from .models import kinetic_mass
from .snapshots import EpcsError, directory_writer, read_series, read_snapshot


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epcs", description="Exciton-polariton condensation simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--config", help="path to a config file")
        p.add_argument("--preset", help="name of a shipped preset")

    p_run = sub.add_parser("run", help="integrate one configuration")
    add_source(p_run)
    p_run.add_argument("--out", help="output directory for snapshots")
    p_run.add_argument("--policy", choices=["reject", "warn"], help="override the CFL policy")

    p_cfl = sub.add_parser("cfl-check", help="print the CFL stability ratio")
    add_source(p_cfl)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    add_source(p_sweep)
    p_sweep.add_argument("--param", required=True, help="config key to vary, e.g. g_ratio")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--out", help="root directory for the sweep outputs")
    p_sweep.add_argument("--policy", choices=["reject", "warn"])

    p_csv = sub.add_parser("export-csv", help="convert EPCS snapshots to CSV")
    p_csv.add_argument("--in", dest="src", required=True, help="snapshot file or directory")
    p_csv.add_argument("--out", required=True, help="directory for the CSV files")

    p_diag = sub.add_parser("diag", help="recompute diagnostics from snapshots")
    p_diag.add_argument("--in", dest="src", required=True, help="snapshot directory")
    p_diag.add_argument("--out", help="also write the summary to this file")
    return parser


def _load_config(args) -> tuple[cfgmod.Config, str]:
    if bool(args.config) == bool(args.preset):
        raise ConfigError("exactly one of --config or --preset is required")
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        return cfgmod.load_config(path), path.stem
    return cfgmod.preset(args.preset), args.preset


def _out_root() -> Path:
    return Path(os.environ.get("EPCS_OUT", "."))


def _do_run(cfg, name: str, out, policy) -> int:
    out_dir = Path(out) if out else _out_root() / f"{name}_out"
    grid = cfgmod.build_grid(cfg)
    params = cfgmod.build_params(cfg)
    init = init_state(cfgmod.build_init(cfg), grid, cfg.tag)
    run_cfg = cfgmod.build_run(cfg, out_dir=out_dir, policy=policy)
    series = run_simulation(init, params, run_cfg, writer=directory_writer(out_dir))
    lines = series.diagnostics.summary_lines(extra=cfgmod.describe(cfg))
    (out_dir / "diagnostics.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(series.times)} snapshots to {out_dir}")
    for line in lines:
        print(line)
    return 0


def _do_cfl(cfg) -> int:
    grid = cfgmod.build_grid(cfg)
    params = cfgmod.build_params(cfg)
    ratio = cfl_ratio(grid, cfg.run["h"], kinetic_mass(params))
    verdict = "PASS" if ratio <= 1.0 else "FAIL"
    print(f"{ratio:.4g} {verdict}")
    return 0 if ratio <= 1.0 else 1


def _do_sweep(cfg, name: str, param: str, values: str, out, policy) -> int:
    root = Path(out) if out else _out_root() / f"{name}_sweep"
    root.mkdir(parents=True, exist_ok=True)
    rows = []
    for raw in values.split(","):
        raw = raw.strip()
        sub_cfg = cfgmod.set_param(cfg, param, raw)
        sub_dir = root / f"{param}_{raw}"
        grid = cfgmod.build_grid(sub_cfg)
        params = cfgmod.build_params(sub_cfg)
        init = init_state(cfgmod.build_init(sub_cfg), grid, sub_cfg.tag)
        run_cfg = cfgmod.build_run(sub_cfg, out_dir=sub_dir, policy=policy)
        series = run_simulation(init, params, run_cfg, writer=directory_writer(sub_dir))
        diag = series.diagnostics
        lines = diag.summary_lines(extra=cfgmod.describe(sub_cfg))
        (sub_dir / "diagnostics.txt").write_text("\n".join(lines) + "\n")
        onset = diag.onset_time
        rows.append((raw, diag.peak_density, diag.peak_number, onset))
        print(f"{param} = {raw}: peak_density = {diag.peak_density:.6g}, "
              f"peak_number = {diag.peak_number:.6g}, "
              f"onset = {'none' if onset is None else f'{onset:.6g} ps'}")
    header = f"{param},peak_density,peak_number,onset_ps"
    body = [
        f"{raw},{pd!r},{pn!r},{'' if onset is None else repr(onset)}"
        for raw, pd, pn, onset in rows
    ]
    (root / "sweep_summary.csv").write_text("\n".join([header, *body]) + "\n")
    print(f"sweep summary written to {root / 'sweep_summary.csv'}")
    return 0


def _export_file(path: Path, out_dir: Path) -> None:
    state = read_snapshot(path)
    grid = state.grid
    if grid.ndim == 1:
        x = grid.x_nodes()
        coord_cols = [x]
        header = "x,re,im"
    else:
        X, Y = grid.coords()
        coord_cols = [X.ravel(), Y.ravel()]
        header = "x,y,re,im"
    for name, values in state.fields.items():
        flat = values.ravel()
        re = np.real(flat)
        im = np.imag(flat) if np.iscomplexobj(flat) else np.zeros_like(re)
        out_path = out_dir / f"{path.stem}_{name}.csv"
        with out_path.open("w") as fh:
            fh.write(header + "\n")
            for row in zip(*coord_cols, re, im):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _do_export(src: str, out: str) -> int:
    src_path = Path(src)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if src_path.is_dir():
        paths = sorted(src_path.glob("*.epcs"))
        if not paths:
            raise EpcsError(f"no .epcs snapshots in {src_path}")
    elif src_path.exists():
        paths = [src_path]
    else:
        raise FileNotFoundError(f"no such snapshot file or directory: {src_path}")
    for path in paths:
        _export_file(path, out_dir)
    print(f"exported {len(paths)} snapshot(s) to {out_dir}")
    return 0


def _do_diag(src: str, out) -> int:
    src_path = Path(src)
    if not src_path.exists():
        raise FileNotFoundError(f"no such snapshot directory: {src_path}")
    series = read_series(src_path)
    diag = peak_report(series)
    lines = diag.summary_lines(extra={"model": series.tag, "snapshots": len(series.times)})
    for line in lines:
        print(line)
    if out:
        Path(out).write_text("\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg, name = _load_config(args)
            return _do_run(cfg, name, args.out, args.policy)
        if args.command == "cfl-check":
            cfg, _ = _load_config(args)
            return _do_cfl(cfg)
        if args.command == "sweep":
            cfg, name = _load_config(args)
            return _do_sweep(cfg, name, args.param, args.values, args.out, args.policy)
        if args.command == "export-csv":
            return _do_export(args.src, args.out)
        if args.command == "diag":
            return _do_diag(args.src, args.out)
        raise AssertionError(f"unhandled command {args.command}")
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ConfigError, EpcsError, CflError, EngineError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
