"""vlcplots: render figures from a vlcmirror run directory."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import render
from .io import SchemaError, read_manifest
from .spec import FigureSpec, load_spec_file


def _out_path(args, default_name: str) -> Path:
    return Path(args.out) if args.out else Path(args.run) / default_name


def _run_render(args) -> list[Path]:
    return [render(spec) for spec in load_spec_file(args.spec)]


def _run_irradiance(args) -> list[Path]:
    spec = FigureSpec(
        kind=args.kind,
        csv=Path(args.run) / "irradiance_grid.csv",
        out=_out_path(args, f"irradiance_field_{args.kind.replace('3d', '_3d')}.png"),
        x="x_m",
        y="y_m",
        value=args.value,
        log_value=args.log,
        xlabel="x (m)",
        ylabel="y (m)",
        title="received irradiance on the detector plane",
    )
    return [render(spec)]


def _run_relative_error(args) -> list[Path]:
    if args.shape == "paraboloid":
        spec = FigureSpec(
            kind="sweep-lines",
            csv=Path(args.run) / "relative_error.csv",
            out=_out_path(args, "relative_error_paraboloid.png"),
            x="w_par_m",
            y="peak_error",
            series="l_par_m",
            panel="h_par_m",
            where={"shape": "paraboloid"},
            xlabel="w_par (m)",
            ylabel="peak relative error",
            title="patch-estimate peak error, paraboloid",
        )
    else:
        spec = FigureSpec(
            kind="sweep-lines",
            csv=Path(args.run) / "relative_error.csv",
            out=_out_path(args, "relative_error_semisphere.png"),
            x="r_sph_m",
            y="peak_error",
            where={"shape": "semisphere"},
            xlabel="r_sph (m)",
            ylabel="peak relative error",
            title="patch-estimate peak error, semi-sphere",
        )
    return [render(spec)]


def _run_shadowing(args) -> list[Path]:
    spec = FigureSpec(
        kind="sweep-lines",
        csv=Path(args.run) / "shadowing_sweep.csv",
        out=_out_path(args, "shadowing_sweep.png"),
        x="w_par_m",
        y="probability",
        series="l_par_m",
        panel="h_par_m",
        xlabel="w_par (m)",
        ylabel="shadowing probability",
        title="shadowing probability across mirror dimensions",
    )
    return [render(spec)]


def _run_snr_cdf(args) -> list[Path]:
    spec = FigureSpec(
        kind="cdf",
        csv=Path(args.run) / "snr_cdf.csv",
        out=_out_path(args, "snr_cdf.png"),
        x="snr_db",
        y="cdf",
        series="series",
        xlabel="SNR (dB)",
        ylabel="CDF",
        title="mirror-path SNR distributions",
    )
    return [render(spec)]


def _run_blockage(args) -> list[Path]:
    cfg = read_manifest(args.run)["config"]
    try:
        rect = (
            float(cfg["source.x"]) - float(cfg["mirror.center_x"]),
            float(cfg["source.y"]),
            float(cfg["source.width"]),
            float(cfg["source.length"]),
        )
    except KeyError as exc:
        raise SchemaError(f"{Path(args.run) / 'manifest.json'}: config is missing {exc}")
    spec = FigureSpec(
        kind="heatmap",
        csv=Path(args.run) / "blockage_map.csv",
        out=_out_path(args, "blockage_map.png"),
        x="x_m",
        y="y_m",
        value="blocked",
        cmap="Greys",
        overlay_rect=rect,
        xlabel="x (m)",
        ylabel="y (m)",
        title="self-blockage map (source panel dashed)",
    )
    return [render(spec)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vlcplots", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    spec_cmd = sub.add_parser("render", help="render every figure in a JSON spec file")
    spec_cmd.add_argument("--spec", required=True, help="JSON file with a 'figures' list")
    spec_cmd.set_defaults(runner=_run_render)

    def run_dir_command(name, runner, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--run", required=True, help="run directory holding the CSV output")
        cmd.add_argument("--out", help="image path (default: <run>/<figure>.png)")
        cmd.set_defaults(runner=runner)
        return cmd

    irr = run_dir_command("irradiance-field", _run_irradiance, "irradiance heatmap or 3d surface")
    irr.add_argument("--kind", choices=("heatmap", "surface3d"), default="heatmap")
    irr.add_argument("--value", default="e_nlos_exact_w_m2", help="which irradiance column to draw")
    irr.add_argument("--log", action=argparse.BooleanOptionalAction, default=True, help="log10 color scale")

    err = run_dir_command("relative-error", _run_relative_error, "patch-estimate error sweep lines")
    err.add_argument("--shape", choices=("paraboloid", "semisphere"), default="paraboloid")

    run_dir_command("shadowing-sweep", _run_shadowing, "shadowing probability sweep panels")
    run_dir_command("snr-cdf", _run_snr_cdf, "SNR CDFs with floor-mass markers")
    run_dir_command("blockage-map", _run_blockage, "grey self-blockage map with the panel overlaid")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        written = args.runner(args)
    except (SchemaError, ValueError, FileNotFoundError) as exc:
        print(f"vlcplots: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"vlcplots: {args.command} failed: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
