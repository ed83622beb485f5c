"""Turn parsed sweep tables into figure files.

Rendering is pure file-to-file: nothing here recomputes physics, and the
output is deterministic for fixed inputs and style. Free-space baseline
curves (scenario label "baseline" or trajectory "free") are drawn dashed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schema import SweepTable, read_sweep_csv

__all__ = ["PlotJob", "load_style", "build_figure", "render"]


@dataclass
class PlotJob:
    """One figure: which CSVs, which columns, where to write."""

    inputs: List[str]
    output: str
    x_column: str = "value"
    y_column: str = "concurrence"
    x_label: str = ""
    y_label: str = ""
    title: str = ""
    log_x: bool = False
    log_y: bool = False
    style: Dict[str, object] = field(default_factory=dict)


def load_style(path: Optional[str] = None) -> Dict[str, object]:
    """Style dict from a JSON file; the packaged default when path is None."""
    if path is None:
        text = resources.files("harvestplots").joinpath("default_style.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def _curve_label(table: SweepTable, index: int) -> str:
    parts = [table.trajectory or f"curve{index}"]
    if table.label and table.label != "baseline":
        parts.append(table.label)
    if table.is_baseline:
        parts.append("(free baseline)")
    return " ".join(parts)


def build_figure(job: PlotJob):
    """Figure for a job; callers that only want the file use render()."""
    style = dict(load_style())
    style.update(job.style)
    fig, ax = plt.subplots(figsize=tuple(style["figsize"]), dpi=style["dpi"])
    colors = list(style["colors"])

    for i, path in enumerate(job.inputs):
        table = read_sweep_csv(path)
        x = table.series(job.x_column)
        y = table.series(job.y_column)
        dashed = table.is_baseline
        ax.plot(
            x,
            y,
            linestyle="--" if dashed else "-",
            color=colors[i % len(colors)],
            linewidth=style["linewidth"],
            label=_curve_label(table, i),
        )

    ax.set_xlabel(job.x_label or job.x_column)
    ax.set_ylabel(job.y_label or job.y_column)
    if job.title:
        ax.set_title(job.title)
    if job.log_x:
        ax.set_xscale("log")
    if job.log_y:
        ax.set_yscale("log")
    if job.inputs:
        ax.legend(fontsize=style["legend_fontsize"])
    ax.grid(style["grid"], alpha=0.3)
    fig.tight_layout()
    return fig


def render(job: PlotJob) -> str:
    """Write the job's figure to job.output; returns the output path."""
    fig = build_figure(job)
    try:
        fig.savefig(job.output, metadata=_stable_metadata(job.output))
    finally:
        plt.close(fig)
    return job.output


def _stable_metadata(path: str) -> Dict[str, str]:
    # Strip creation timestamps so identical inputs give identical bytes.
    if path.endswith(".svg"):
        return {"Date": None}
    return {}
