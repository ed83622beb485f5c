"""Plotting frontend for harvestcli CSV sweep output."""

from .render import PlotJob, build_figure, load_style, render
from .schema import REQUIRED_COLUMNS, SchemaError, SweepTable, read_sweep_csv

__all__ = [
    "PlotJob",
    "REQUIRED_COLUMNS",
    "SchemaError",
    "SweepTable",
    "build_figure",
    "load_style",
    "read_sweep_csv",
    "render",
]
