"""Tests for the harvestcli CSV reader."""

import numpy as np
import pytest

from harvestplots import REQUIRED_COLUMNS, SchemaError, read_sweep_csv

HEADER = ",".join(REQUIRED_COLUMNS)


def _write(tmp_path, text, name="curve.csv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _row(value, conc):
    cells = {c: "0" for c in REQUIRED_COLUMNS}
    cells["sweep_var"] = "d_A"
    cells["value"] = repr(value)
    cells["concurrence"] = repr(conc)
    cells["flags"] = ""
    return ",".join(cells[c] for c in REQUIRED_COLUMNS)


def test_roundtrip(tmp_path):
    path = _write(
        tmp_path,
        "# scenario.trajectory=static\n"
        "# scenario.label=\n"
        "# sweep.variable=d_A\n"
        f"{HEADER}\n{_row(0.5, 0.01)}\n{_row(1.0, 0.08)}\n",
    )
    table = read_sweep_csv(path)
    assert len(table) == 2
    assert table.trajectory == "static"
    assert not table.is_baseline
    assert table.meta["sweep.variable"] == "d_A"
    assert np.allclose(table.series("value"), [0.5, 1.0])
    assert np.allclose(table.series("concurrence"), [0.01, 0.08])
    assert table.series("flags") == ["", ""]


@pytest.mark.parametrize(
    "meta,expected",
    [
        ("# scenario.trajectory=free\n", True),
        ("# scenario.trajectory=static\n# scenario.label=baseline\n", True),
        ("# scenario.trajectory=static\n", False),
    ],
)
def test_baseline_detection(tmp_path, meta, expected):
    table = read_sweep_csv(_write(tmp_path, f"{meta}{HEADER}\n{_row(1.0, 0.0)}\n"))
    assert table.is_baseline is expected


def test_header_only_file_is_valid(tmp_path):
    table = read_sweep_csv(_write(tmp_path, f"{HEADER}\n"))
    assert len(table) == 0
    assert table.series("value").shape == (0,)


def test_missing_columns_named(tmp_path):
    cols = [c for c in REQUIRED_COLUMNS if c not in ("concurrence", "err_X")]
    path = _write(tmp_path, ",".join(cols) + "\n")
    with pytest.raises(SchemaError, match="missing columns: concurrence, err_X"):
        read_sweep_csv(path)


def test_no_header_row(tmp_path):
    with pytest.raises(SchemaError, match="no column header"):
        read_sweep_csv(_write(tmp_path, "# scenario.trajectory=free\n"))


def test_ragged_row_rejected(tmp_path):
    path = _write(tmp_path, f"{HEADER}\n1,2,3\n")
    with pytest.raises(SchemaError, match="data row 1"):
        read_sweep_csv(path)


def test_non_numeric_cell_rejected(tmp_path):
    bad = _row(1.0, 0.0).replace("0.0", "zero", 1)
    with pytest.raises(SchemaError, match="not numeric"):
        read_sweep_csv(_write(tmp_path, f"{HEADER}\n{bad}\n"))


def test_unknown_series_rejected(tmp_path):
    table = read_sweep_csv(_write(tmp_path, f"{HEADER}\n"))
    with pytest.raises(SchemaError, match="no column 'bogus'"):
        table.series("bogus")
