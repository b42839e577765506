"""Batch figure rendering for vlcmirror run directories.

Consumes the CSV files and manifest.json a run writes; never recomputes
physics and never modifies its inputs.
"""

from .figures import build_figure, render
from .io import SchemaError, file_sha256, read_columns, require_columns
from .spec import KINDS, FigureSpec, load_spec_file

__all__ = [
    "FigureSpec",
    "KINDS",
    "SchemaError",
    "build_figure",
    "file_sha256",
    "load_spec_file",
    "read_columns",
    "render",
    "require_columns",
]

__version__ = "0.1.0"
