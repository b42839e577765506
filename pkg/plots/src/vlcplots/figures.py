"""Render one FigureSpec to an image file."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # batch tool: never require a display

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Rectangle

from .io import read_columns, require_columns
from .spec import FigureSpec

# one fixed style so identical inputs give identical pixels
_STYLE = {
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
}


def reshape_grid(x: np.ndarray, y: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Scattered (x, y, value) rows to a (ny, nx) array; absent cells are NaN."""
    xs = np.unique(x)
    ys = np.unique(y)
    grid = np.full((ys.size, xs.size), np.nan)
    grid[np.searchsorted(ys, y), np.searchsorted(xs, x)] = v
    return xs, ys, grid


def _filtered(spec: FigureSpec) -> dict[str, np.ndarray]:
    columns = read_columns(spec.csv)
    roles = [spec.x, spec.y, spec.value, spec.series, spec.panel]
    needed = tuple(dict.fromkeys([r for r in roles if r] + list(spec.where)))
    require_columns(columns, needed, spec.csv)
    if spec.where:
        keep = np.ones(len(next(iter(columns.values()))), dtype=bool)
        for key, want in spec.where.items():
            keep &= np.array([str(cell) == want for cell in columns[key]])
        columns = {name: col[keep] for name, col in columns.items()}
    return columns


def _labels(ax, spec: FigureSpec) -> None:
    ax.set_xlabel(spec.xlabel or spec.x or "")
    ax.set_ylabel(spec.ylabel or spec.y or "")


def _values(spec: FigureSpec, columns: dict[str, np.ndarray]) -> np.ndarray:
    v = columns[spec.value].astype(float)
    if spec.log_value:
        with np.errstate(divide="ignore"):
            v = np.log10(v)
        v[~np.isfinite(v)] = np.nan
    return v


def _heatmap(fig, spec: FigureSpec, columns) -> None:
    ax = fig.add_subplot()
    xs, ys, grid = reshape_grid(columns[spec.x], columns[spec.y], _values(spec, columns))
    mesh = ax.pcolormesh(xs, ys, np.ma.masked_invalid(grid), cmap=spec.cmap, shading="nearest")
    ax.set_aspect("equal")
    fig.colorbar(mesh, ax=ax, label=(f"log10({spec.value})" if spec.log_value else spec.value))
    if spec.overlay_rect is not None:
        cx, cy, w, d = spec.overlay_rect
        ax.add_patch(
            Rectangle((cx - w / 2, cy - d / 2), w, d, fill=False, edgecolor="red", linestyle="--", linewidth=1.5)
        )
    _labels(ax, spec)


def _surface3d(fig, spec: FigureSpec, columns) -> None:
    ax = fig.add_subplot(projection="3d")
    xs, ys, grid = reshape_grid(columns[spec.x], columns[spec.y], _values(spec, columns))
    gx, gy = np.meshgrid(xs, ys)
    surf = ax.plot_surface(gx, gy, np.nan_to_num(grid, nan=0.0), cmap=spec.cmap, linewidth=0)
    fig.colorbar(surf, ax=ax, shrink=0.7, label=(f"log10({spec.value})" if spec.log_value else spec.value))
    _labels(ax, spec)
    ax.set_zlabel(spec.value or "")


def _series_values(column: np.ndarray) -> list:
    if column.dtype == object:
        return sorted(set(column.tolist()))
    return [float(v) for v in np.unique(column)]


def _sweep_lines(fig, spec: FigureSpec, columns) -> None:
    panels = _series_values(columns[spec.panel]) if spec.panel else [None]
    axes = fig.subplots(1, len(panels), sharey=True, squeeze=False)[0]
    for ax, panel in zip(axes, panels):
        mask = np.ones(len(columns[spec.x]), dtype=bool) if panel is None else columns[spec.panel] == panel
        series = _series_values(columns[spec.series][mask]) if spec.series else [None]
        for val in series:
            keep = mask if val is None else mask & (columns[spec.series] == val)
            order = np.argsort(columns[spec.x][keep], kind="stable")
            label = None if val is None else f"{spec.series}={val:g}" if not isinstance(val, str) else val
            ax.plot(columns[spec.x][keep][order], columns[spec.y][keep][order], marker="o", markersize=3, label=label)
        if panel is not None:
            ax.set_title(f"{spec.panel}={panel:g}" if not isinstance(panel, str) else str(panel))
        _labels(ax, spec)
        if spec.series:
            ax.legend()


def _cdf(fig, spec: FigureSpec, columns) -> None:
    ax = fig.add_subplot()
    x_all = columns[spec.x].astype(float)
    finite = x_all[np.isfinite(x_all)]
    if finite.size == 0:
        raise ValueError(f"{spec.csv}: column {spec.x} has no finite values to plot")
    left = float(finite.min())
    floors = []
    for val in _series_values(columns[spec.series]):
        keep = columns[spec.series] == val
        x = x_all[keep]
        p = columns[spec.y].astype(float)[keep]
        label = val if isinstance(val, str) else f"{val:g}"
        fin = np.isfinite(x)
        floor = float(p[~fin].max()) if (~fin).any() else 0.0
        if fin.any():
            order = np.argsort(x[fin], kind="stable")
            (line,) = ax.step(x[fin][order], p[fin][order], where="post", label=label)
            color = line.get_color()
        else:
            (line,) = ax.plot([], [], label=label)
            color = line.get_color()
        if floor > 0:
            # -inf probability mass drawn as a left-edge marker
            ax.plot([left], [floor], marker="<", color=color, clip_on=False)
            floors.append((label, floor, color))
    for i, (label, floor, color) in enumerate(floors):
        ax.annotate(
            f"{label}: floor {100 * floor:.1f}%",
            xy=(0.02, 0.96 - 0.05 * i),
            xycoords="axes fraction",
            fontsize=7,
            color=color,
        )
    ax.set_ylim(0.0, 1.02)
    _labels(ax, spec)
    ax.legend(loc="lower right")


_KIND_SIZES = {"heatmap": (6.0, 5.0), "surface3d": (6.4, 5.2), "sweep-lines": (10.0, 3.6), "cdf": (6.4, 4.8)}
_RENDERERS = {"heatmap": _heatmap, "surface3d": _surface3d, "sweep-lines": _sweep_lines, "cdf": _cdf}


def build_figure(spec: FigureSpec):
    """Read the CSV and draw it; returns the matplotlib Figure."""
    columns = _filtered(spec)
    if len(next(iter(columns.values()))) == 0:
        raise ValueError(f"{spec.csv}: no rows left after filter {spec.where}")
    with plt.rc_context(_STYLE):
        fig = plt.figure(figsize=_KIND_SIZES[spec.kind])
        _RENDERERS[spec.kind](fig, spec, columns)
        if spec.title:
            fig.suptitle(spec.title)
        fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> Path:
    """Render to spec.out (format from the suffix); returns the path written."""
    fig = build_figure(spec)
    spec.out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.savefig(spec.out)
    finally:
        plt.close(fig)
    return spec.out
