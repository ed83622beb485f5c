"""Reader for harvestcli CSV sweep files.

The file contract: optional '#'-prefixed metadata lines (key=value, keys like
``scenario.trajectory`` or ``sweep.variable``), followed by one column-header
row, followed by zero or more data rows. All columns except ``sweep_var`` and
``flags`` are floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

__all__ = ["REQUIRED_COLUMNS", "SchemaError", "SweepTable", "read_sweep_csv"]

REQUIRED_COLUMNS = [
    "sweep_var",
    "value",
    "P_A",
    "P_B",
    "Re_X",
    "Im_X",
    "abs_X",
    "sqrt_PAPB",
    "concurrence",
    "negativity",
    "err_P_A",
    "err_P_B",
    "err_X",
    "flags",
]

_TEXT_COLUMNS = {"sweep_var", "flags"}


class SchemaError(ValueError):
    """The file does not match the harvestcli CSV contract."""


@dataclass
class SweepTable:
    """One parsed sweep file: metadata header plus named columns."""

    path: str
    meta: Dict[str, str] = field(default_factory=dict)
    columns: Dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.columns.get("value", ()))

    @property
    def trajectory(self) -> str:
        return self.meta.get("scenario.trajectory", "")

    @property
    def label(self) -> str:
        return self.meta.get("scenario.label", "")

    @property
    def is_baseline(self) -> bool:
        return self.label == "baseline" or self.trajectory == "free"

    def series(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise SchemaError(f"{self.path}: no column {name!r}")
        return self.columns[name]


def read_sweep_csv(path: str) -> SweepTable:
    """Parse one harvestcli CSV; raises SchemaError naming any missing or
    malformed columns."""
    meta: Dict[str, str] = {}
    header: List[str] = []
    rows: List[List[str]] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, val = body.split("=", 1)
                    meta[key.strip()] = val.strip()
                continue
            cells = line.split(",")
            if not header:
                header = [c.strip() for c in cells]
                continue
            rows.append(cells)

    if not header:
        raise SchemaError(f"{path}: no column header row")
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing columns: {', '.join(missing)}")

    columns: Dict[str, object] = {}
    for j, name in enumerate(header):
        cells = []
        for i, row in enumerate(rows):
            if len(row) != len(header):
                raise SchemaError(
                    f"{path}: data row {i + 1} has {len(row)} cells, header has {len(header)}"
                )
            cells.append(row[j])
        if name in _TEXT_COLUMNS:
            columns[name] = [c.strip() for c in cells]
        else:
            try:
                columns[name] = np.array([float(c) for c in cells])
            except ValueError as exc:
                raise SchemaError(f"{path}: column {name!r} is not numeric: {exc}") from exc
    return SweepTable(path=path, meta=meta, columns=columns)
