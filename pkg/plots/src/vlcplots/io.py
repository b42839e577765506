"""CSV and manifest readers with schema diagnostics."""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

import numpy as np


class SchemaError(ValueError):
    """Input file does not match the expected column schema."""


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def read_columns(path: str | Path) -> dict[str, np.ndarray]:
    """Parse a headered CSV into per-column arrays.

    Columns parse as float64 when every cell does (inf/-inf/nan included);
    anything else stays an object column of strings.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        rows = list(reader)
    if not header:
        raise SchemaError(f"{path}: file is empty, expected a CSV header line")
    short = [i for i, row in enumerate(rows) if len(row) != len(header)]
    if short:
        raise SchemaError(
            f"{path}: row {short[0] + 2} has {len(rows[short[0]])} cells, header has {len(header)}"
        )
    columns: dict[str, np.ndarray] = {}
    for idx, name in enumerate(header):
        raw = [row[idx] for row in rows]
        try:
            columns[name] = np.array([float(cell) for cell in raw], dtype=float)
        except ValueError:
            columns[name] = np.array(raw, dtype=object)
    return columns


def require_columns(columns: dict[str, np.ndarray], needed: tuple[str, ...], path: str | Path) -> None:
    missing = [name for name in needed if name not in columns]
    if missing:
        raise SchemaError(
            f"{path} is missing column(s) {', '.join(missing)}; found {', '.join(columns)}"
        )


def read_manifest(run_dir: str | Path) -> dict:
    path = Path(run_dir) / "manifest.json"
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"{path} not found; is {run_dir} a completed run directory?")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})")
    if "config" not in data:
        raise SchemaError(f"{path} has no 'config' section")
    return data
