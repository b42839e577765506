import hashlib
import json

import numpy as np
import pytest

from vlcplots import SchemaError, file_sha256, read_columns, require_columns
from vlcplots.io import read_manifest


def test_read_columns_parses_floats_strings_and_non_finites(tmp_path):
    path = tmp_path / "mix.csv"
    path.write_text("a,b,c\n1,x,inf\n2.5,y,-inf\n-3,z,nan\n")
    cols = read_columns(path)
    np.testing.assert_array_equal(cols["a"], [1.0, 2.5, -3.0])
    assert cols["b"].dtype == object
    assert list(cols["b"]) == ["x", "y", "z"]
    assert np.isposinf(cols["c"][0]) and np.isneginf(cols["c"][1]) and np.isnan(cols["c"][2])


def test_read_columns_header_only_gives_empty_columns(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("a,b\n")
    cols = read_columns(path)
    assert set(cols) == {"a", "b"}
    assert len(cols["a"]) == 0


def test_read_columns_rejects_headerless_file(tmp_path):
    path = tmp_path / "none.csv"
    path.write_text("")
    with pytest.raises(SchemaError, match="expected a CSV header"):
        read_columns(path)


def test_read_columns_rejects_ragged_rows(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("a,b\n1,2\n3\n")
    with pytest.raises(SchemaError, match="row 3 has 1 cells, header has 2"):
        read_columns(path)


def test_require_columns_names_what_is_missing(tmp_path):
    path = tmp_path / "cols.csv"
    path.write_text("x_m,y_m\n0,0\n")
    cols = read_columns(path)
    require_columns(cols, ("x_m", "y_m"), path)
    with pytest.raises(SchemaError, match=r"missing column\(s\) blocked; found x_m, y_m"):
        require_columns(cols, ("x_m", "blocked"), path)


def test_file_sha256_matches_hashlib(tmp_path):
    path = tmp_path / "blob.bin"
    path.write_bytes(b"vlc" * 1000)
    assert file_sha256(path) == hashlib.sha256(b"vlc" * 1000).hexdigest()


def test_read_manifest_round_trip(tmp_path):
    (tmp_path / "manifest.json").write_text(
        json.dumps({"command": "blockage-map", "config": {"source.x": 0.0}, "outputs": []})
    )
    assert read_manifest(tmp_path)["config"]["source.x"] == 0.0


def test_read_manifest_errors_name_the_problem(tmp_path):
    with pytest.raises(SchemaError, match="completed run directory"):
        read_manifest(tmp_path / "nowhere")
    (tmp_path / "manifest.json").write_text("{broken")
    with pytest.raises(SchemaError, match="not valid JSON"):
        read_manifest(tmp_path)
    (tmp_path / "manifest.json").write_text("{}")
    with pytest.raises(SchemaError, match="no 'config' section"):
        read_manifest(tmp_path)
