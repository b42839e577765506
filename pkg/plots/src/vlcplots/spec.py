"""Figure descriptions: what to read, how to draw it, where to write it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

KINDS = ("heatmap", "surface3d", "sweep-lines", "cdf")

# column roles each kind must have bound before rendering
_REQUIRED_ROLES = {
    "heatmap": ("x", "y", "value"),
    "surface3d": ("x", "y", "value"),
    "sweep-lines": ("x", "y"),
    "cdf": ("x", "y", "series"),
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure: an input CSV, a kind, column roles, labels, output path."""

    kind: str
    csv: Path
    out: Path
    x: str | None = None
    y: str | None = None
    value: str | None = None
    series: str | None = None
    panel: str | None = None
    # keep only rows whose (string) column equals the given value
    where: dict[str, str] = field(default_factory=dict)
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    cmap: str = "viridis"
    # room-frame rectangle (cx, cy, width, depth) drawn over heatmaps
    overlay_rect: tuple[float, float, float, float] | None = None
    log_value: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind '{self.kind}'; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "csv", Path(self.csv))
        object.__setattr__(self, "out", Path(self.out))
        missing = [role for role in _REQUIRED_ROLES[self.kind] if getattr(self, role) is None]
        if missing:
            raise ValueError(f"figure kind '{self.kind}' needs column role(s) {', '.join(missing)}")


def load_spec_file(path: str | Path) -> list[FigureSpec]:
    """Read a JSON file of the form {"figures": [{...}, ...]}."""
    path = Path(path)
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})")
    figures = data.get("figures")
    if not isinstance(figures, list) or not figures:
        raise ValueError(f"{path}: expected a non-empty 'figures' list")
    specs = []
    for i, entry in enumerate(figures):
        if not isinstance(entry, dict):
            raise ValueError(f"{path}: figures[{i}] is not an object")
        unknown = set(entry) - set(FigureSpec.__dataclass_fields__)
        if unknown:
            raise ValueError(f"{path}: figures[{i}] has unknown key(s) {', '.join(sorted(unknown))}")
        for key in ("kind", "csv", "out"):
            if key not in entry:
                raise ValueError(f"{path}: figures[{i}] is missing '{key}'")
        entry = dict(entry)
        if "overlay_rect" in entry and entry["overlay_rect"] is not None:
            entry["overlay_rect"] = tuple(float(v) for v in entry["overlay_rect"])
        specs.append(FigureSpec(**entry))
    return specs
