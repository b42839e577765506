"""Serialization of experiment results to CSV files plus a run manifest.

Floats are written with ``repr`` so values round-trip exactly through
``float()``; a rerun from the manifest reproduces the run byte for byte.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .blockage import BlockageMap
from .metrics import IrradianceField
from .scenario import ScenarioConfig, resolved_mapping

MANIFEST_NAME = "manifest.json"


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_rows(path: str | Path, header: Iterable[str], rows: Iterable[Iterable]) -> Path:
    """Write one CSV with the given header and rows; returns the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def write_records(path: str | Path, records: list[Mapping]) -> Path:
    """Write a list of homogeneous dicts as CSV, keys of the first as header."""
    if not records:
        raise ValueError("no records to write")
    header = list(records[0].keys())
    return write_rows(path, header, ([rec[k] for k in header] for rec in records))


def write_field(path: str | Path, field: IrradianceField) -> Path:
    """Long-format irradiance field: one row per receiver cell."""
    header = (
        "x_m",
        "y_m",
        "e_los_w_m2",
        "e_nlos_exact_w_m2",
        "e_nlos_approx_w_m2",
    )
    xg, yg = np.meshgrid(field.x, field.y, indexing="ij")

    def rows():
        for i in range(xg.shape[0]):
            for j in range(xg.shape[1]):
                yield (
                    xg[i, j],
                    yg[i, j],
                    field.e_los[i, j],
                    field.e_nlos_exact[i, j],
                    field.e_nlos_approx[i, j],
                )

    return write_rows(path, header, rows())


def write_blockage(path: str | Path, bmap: BlockageMap) -> Path:
    """Long-format potential-blockage map: x, y, blocked flag per cell."""
    header = ("x_m", "y_m", "blocked")
    xg, yg = np.meshgrid(bmap.x, bmap.y, indexing="ij")

    def rows():
        for i in range(xg.shape[0]):
            for j in range(xg.shape[1]):
                yield (xg[i, j], yg[i, j], bmap.blocked[i, j])

    return write_rows(path, header, rows())


def write_manifest(
    out_dir: str | Path,
    command: str,
    cfg: ScenarioConfig,
    outputs: list[Path],
    extra: Mapping | None = None,
) -> Path:
    """Record what was run, with the resolved config, so runs can be redone.

    The manifest itself is a valid ``--config`` argument: rerunning the same
    subcommand against it reproduces the CSVs exactly.
    """
    out_dir = Path(out_dir)
    payload = {
        "command": command,
        "config": resolved_mapping(cfg),
        "outputs": sorted(p.name for p in outputs),
    }
    if extra:
        payload["extra"] = dict(extra)
    path = out_dir / MANIFEST_NAME
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path
