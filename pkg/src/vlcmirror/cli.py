"""Command-line front end: run one experiment, drop CSVs plus a manifest.

Exit status is 0 on success, 1 for configuration problems, 2 for runtime
failures.  Every run writes ``manifest.json`` beside its CSVs; passing that
manifest back through ``--config`` reruns the identical experiment.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import experiments, output
from .scenario import ConfigError, ScenarioConfig, load_config, validate


def _run_irradiance_field(cfg: ScenarioConfig, out_dir: Path) -> list[Path]:
    field = experiments.run_irradiance_field(cfg)
    return [output.write_field(out_dir / "irradiance_grid.csv", field)]


def _run_relative_error(cfg: ScenarioConfig, out_dir: Path) -> list[Path]:
    rows = experiments.run_relative_error(cfg)
    return [output.write_records(out_dir / "relative_error.csv", rows)]


def _run_shadowing_sweep(cfg: ScenarioConfig, out_dir: Path) -> list[Path]:
    rows = experiments.run_shadowing_sweep(cfg)
    return [output.write_records(out_dir / "shadowing_sweep.csv", rows)]


def _run_snr_cdf(cfg: ScenarioConfig, out_dir: Path) -> list[Path]:
    rows = experiments.run_snr_cdf(cfg)
    return [output.write_records(out_dir / "snr_cdf.csv", rows)]


def _run_blockage_map(cfg: ScenarioConfig, out_dir: Path) -> list[Path]:
    bmap = experiments.run_blockage_map(cfg)
    return [output.write_blockage(out_dir / "blockage_map.csv", bmap)]


_COMMANDS = {
    "irradiance-field": (
        _run_irradiance_field,
        "direct and mirror-path irradiance over the receiver grid",
    ),
    "relative-error": (
        _run_relative_error,
        "peak patch-approximation error across the mirror sweeps",
    ),
    "shadowing-sweep": (
        _run_shadowing_sweep,
        "shadowing probability across mirror dimensions",
    ),
    "snr-cdf": (
        _run_snr_cdf,
        "mirror-path SNR distributions for the reference mirrors",
    ),
    "blockage-map": (
        _run_blockage_map,
        "map of receiver cells a user's body can fully shadow",
    ),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vlcmirror",
        description="Mirror-assisted indoor optical link experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--config",
            default=None,
            help="config file (key = value lines) or a previous run's manifest.json",
        )
        p.add_argument(
            "--out",
            default=None,
            help=f"output directory (default: runs/{name})",
        )
        p.add_argument("--seed", type=int, default=None, help="override the RNG seed")
        p.add_argument(
            "--grid", type=int, default=None, help="override receiver cells per axis"
        )
        p.add_argument(
            "--mesh", type=int, default=None, help="override mirror mesh cells per axis"
        )
    return parser


def _apply_overrides(cfg: ScenarioConfig, args: argparse.Namespace) -> ScenarioConfig:
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.grid is not None:
        updates["grid_n"] = args.grid
    if args.mesh is not None:
        updates["mesh_n"] = args.mesh
    if not updates:
        return cfg
    return validate(replace(cfg, **updates))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    runner, _ = _COMMANDS[args.command]
    try:
        cfg = _apply_overrides(load_config(args.config), args)
    except ConfigError as exc:
        print(f"vlcmirror: config error: {exc}", file=sys.stderr)
        return 1
    out_dir = Path(args.out) if args.out else Path("runs") / args.command
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        outputs = runner(cfg, out_dir)
        manifest = output.write_manifest(out_dir, args.command, cfg, outputs)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"vlcmirror: {args.command} failed: {exc}", file=sys.stderr)
        return 2
    for path in [*outputs, manifest]:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
