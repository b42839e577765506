import numpy as np
import pytest

from vlcplots import FigureSpec, SchemaError, build_figure, file_sha256, render
from vlcplots.figures import reshape_grid


def write_grid_csv(path):
    # 4x3 grid in scrambled row order with one missing cell
    rows = [(x, y, 10 * x + y) for x in (0.0, 1.0, 2.0, 3.0) for y in (0.0, 0.5, 1.0)]
    rows = rows[7:] + rows[:6]  # drop (2.0, 0.5), scramble the rest
    path.write_text("x_m,y_m,v\n" + "".join(f"{x},{y},{v}\n" for x, y, v in rows))
    return path


def test_reshape_grid_reorders_scattered_rows():
    x = np.array([1.0, 0.0, 1.0, 0.0])
    y = np.array([5.0, 7.0, 7.0, 5.0])
    v = np.array([15.0, 7.0, 17.0, 5.0])
    xs, ys, grid = reshape_grid(x, y, v)
    np.testing.assert_array_equal(xs, [0.0, 1.0])
    np.testing.assert_array_equal(ys, [5.0, 7.0])
    np.testing.assert_array_equal(grid, [[5.0, 15.0], [7.0, 17.0]])


def test_reshape_grid_leaves_holes_as_nan():
    xs, ys, grid = reshape_grid(np.array([0.0, 1.0]), np.array([0.0, 1.0]), np.array([1.0, 2.0]))
    assert np.isnan(grid[0, 1]) and np.isnan(grid[1, 0])


@pytest.mark.parametrize("kind", ["heatmap", "surface3d"])
def test_grid_kinds_render_without_touching_the_csv(tmp_path, kind):
    csv = write_grid_csv(tmp_path / "grid.csv")
    before = file_sha256(csv)
    spec = FigureSpec(kind=kind, csv=csv, out=tmp_path / f"{kind}.png", x="x_m", y="y_m", value="v")
    out = render(spec)
    assert out.stat().st_size > 0
    assert file_sha256(csv) == before


def test_same_csv_renders_identical_bytes(tmp_path):
    csv = write_grid_csv(tmp_path / "grid.csv")
    common = dict(kind="heatmap", csv=csv, x="x_m", y="y_m", value="v")
    first = render(FigureSpec(out=tmp_path / "one.png", **common))
    second = render(FigureSpec(out=tmp_path / "two.png", **common))
    assert first.read_bytes() == second.read_bytes()


def test_log_scale_heatmap_masks_zero_cells(tmp_path):
    csv = tmp_path / "grid.csv"
    csv.write_text("x_m,y_m,v\n0,0,0.0\n0,1,1e-6\n1,0,1e-3\n1,1,1.0\n")
    spec = FigureSpec(
        kind="heatmap", csv=csv, out=tmp_path / "log.png", x="x_m", y="y_m", value="v", log_value=True
    )
    assert render(spec).stat().st_size > 0


def test_heatmap_overlay_rectangle_is_drawn(tmp_path):
    csv = write_grid_csv(tmp_path / "grid.csv")
    spec = FigureSpec(
        kind="heatmap",
        csv=csv,
        out=tmp_path / "o.png",
        x="x_m",
        y="y_m",
        value="v",
        overlay_rect=(1.0, 0.5, 0.5, 0.25),
    )
    fig = build_figure(spec)
    patches = [p for p in fig.axes[0].patches if p.get_linestyle() == "--"]
    assert len(patches) == 1
    assert patches[0].get_xy() == (0.75, 0.375)


def test_sweep_lines_panels_and_series(tmp_path):
    csv = tmp_path / "sweep.csv"
    lines = ["h,w,l,p"]
    for h in (0.1, 0.5):
        for w in (0.2, 0.4, 0.6):
            for l_par in (0.0, 0.1):
                lines.append(f"{h},{w},{l_par},{(w + l_par) / (1 + h)}")
    csv.write_text("\n".join(lines) + "\n")
    spec = FigureSpec(
        kind="sweep-lines", csv=csv, out=tmp_path / "s.png", x="w", y="p", series="l", panel="h"
    )
    fig = build_figure(spec)
    assert len(fig.axes) == 2  # one panel per h
    assert len(fig.axes[0].lines) == 2  # one line per l
    assert render(spec).stat().st_size > 0


def test_sweep_lines_minimal_single_curve(tmp_path):
    csv = tmp_path / "curve.csv"
    csv.write_text("r,e\n0.3,0.002\n0.1,0.001\n0.2,0.0015\n")
    spec = FigureSpec(kind="sweep-lines", csv=csv, out=tmp_path / "c.png", x="r", y="e")
    fig = build_figure(spec)
    # rows are sorted by x before drawing
    np.testing.assert_array_equal(fig.axes[0].lines[0].get_xdata(), [0.1, 0.2, 0.3])
    assert render(spec).stat().st_size > 0


def write_cdf_csv(path):
    lines = ["series,snr_db,cdf"]
    lines += [f"a,{x},{(i + 1) / 4}" for i, x in enumerate((1.0, 2.0, 3.0, 4.0))]
    lines += ["b,-inf,0.25"] + [f"b,{x},{0.25 + (i + 1) * 0.25}" for i, x in enumerate((2.5, 3.5, 4.5))]
    path.write_text("\n".join(lines) + "\n")
    return path


def test_cdf_marks_and_annotates_the_floor_mass(tmp_path):
    csv = write_cdf_csv(tmp_path / "cdf.csv")
    spec = FigureSpec(kind="cdf", csv=csv, out=tmp_path / "cdf.png", x="snr_db", y="cdf", series="series")
    fig = build_figure(spec)
    notes = [t.get_text() for t in fig.axes[0].texts]
    assert "b: floor 25.0%" in notes
    assert all("a:" not in n for n in notes)  # series without -inf rows gets no note
    assert render(spec).stat().st_size > 0


def test_cdf_with_no_finite_values_is_an_error(tmp_path):
    csv = tmp_path / "dark.csv"
    csv.write_text("series,snr_db,cdf\na,-inf,1.0\n")
    spec = FigureSpec(kind="cdf", csv=csv, out=tmp_path / "d.png", x="snr_db", y="cdf", series="series")
    with pytest.raises(ValueError, match="no finite values"):
        build_figure(spec)


def test_missing_column_is_reported_by_name(tmp_path):
    csv = write_grid_csv(tmp_path / "grid.csv")
    spec = FigureSpec(kind="heatmap", csv=csv, out=tmp_path / "x.png", x="x_m", y="y_m", value="blocked")
    with pytest.raises(SchemaError, match=r"missing column\(s\) blocked"):
        build_figure(spec)


def test_filter_that_drops_every_row_is_an_error(tmp_path):
    csv = tmp_path / "shapes.csv"
    csv.write_text("shape,w,p\nplane,0.2,0.9\nplane,0.4,0.8\n")
    spec = FigureSpec(
        kind="sweep-lines",
        csv=csv,
        out=tmp_path / "f.png",
        x="w",
        y="p",
        where={"shape": "paraboloid"},
    )
    with pytest.raises(ValueError, match="no rows left after filter"):
        build_figure(spec)


def test_where_filter_keeps_matching_rows_only(tmp_path):
    csv = tmp_path / "shapes.csv"
    csv.write_text("shape,w,p\nplane,0.2,0.9\nparaboloid,0.2,0.1\nplane,0.4,0.8\n")
    spec = FigureSpec(
        kind="sweep-lines", csv=csv, out=tmp_path / "p.png", x="w", y="p", where={"shape": "plane"}
    )
    fig = build_figure(spec)
    np.testing.assert_array_equal(fig.axes[0].lines[0].get_ydata(), [0.9, 0.8])
