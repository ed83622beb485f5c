"""Parameter sweeps and CSV/JSON emission for the batch CLI.

A Scenario is a flat, fully serializable description of one physical setup:
mirror trajectory, coupling, detector pair, regulators, and quadrature
tolerances. A SweepSpec varies one scenario field over a grid; run_sweep
evaluates every grid point and never aborts on a per-point failure (the
failure is recorded in that row's flags instead).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from .correlators import DERIVATIVE, LINEAR, CorrelatorRequest, Regulators
from .detectors import DetectorPair, DetectorSpec
from .entanglement import default_quad_spec, harvest
from .quadrature import QuadSpec
from .trajectories import (
    BLACK_HOLE_COLLAPSE,
    CARLITZ_WILLEY,
    STATIC,
    MirrorTrajectory,
)

__all__ = ["Scenario", "SweepSpec", "run_sweep", "emit", "CSV_COLUMNS"]

FREE_SPACE = "free"

# Default epsilon schedule for derivative coupling: double poles are more
# regulator-sensitive than logs, so extrapolate the integrals to eps -> 0.
DERIVATIVE_EPS_SCHEDULE = (4e-3, 2e-3, 1e-3)

CSV_COLUMNS = [
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

SWEEP_VARIABLES = ("d_A", "x_A", "dx", "omega", "t_A", "lambda_ir", "sigma_scale", "d")


@dataclass(frozen=True)
class Scenario:
    """One fully specified harvesting setup."""

    trajectory: str = FREE_SPACE
    kappa: float = 0.5
    v_horizon: float = 0.0
    coupling: str = LINEAR
    omega: float = 1.0
    sigma: float = 1.0
    t_a: float = 0.0
    t_b: float = 0.0
    x_a: float = 1.0
    delta_x: float = 1.0
    epsilon: float = 1e-4
    eps_schedule: Tuple[float, ...] = ()
    lambda_ir: float = 1e-12
    rel_tol: float = 1e-6
    abs_tol: float = 1e-12
    window: float = 5.0
    label: str = ""

    def __post_init__(self):
        if self.trajectory not in (FREE_SPACE, STATIC, CARLITZ_WILLEY, BLACK_HOLE_COLLAPSE):
            raise ValueError(f"unknown trajectory {self.trajectory!r}")
        if self.coupling not in (LINEAR, DERIVATIVE):
            raise ValueError(f"unknown coupling {self.coupling!r}")

    def mirror(self) -> Optional[MirrorTrajectory]:
        if self.trajectory == FREE_SPACE:
            return None
        if self.trajectory == STATIC:
            return MirrorTrajectory.static()
        if self.trajectory == CARLITZ_WILLEY:
            return MirrorTrajectory.carlitz_willey(self.kappa)
        return MirrorTrajectory.black_hole_collapse(self.kappa, self.v_horizon)

    def request(self) -> CorrelatorRequest:
        return CorrelatorRequest(coupling=self.coupling, background=self.mirror())

    def pair(self) -> DetectorPair:
        a = DetectorSpec(self.omega, self.t_a, self.x_a, self.sigma)
        b = DetectorSpec(self.omega, self.t_b, self.x_a + self.delta_x, self.sigma)
        return DetectorPair(a, b)

    def regulators(self) -> Regulators:
        sched = self.eps_schedule
        if not sched and self.coupling == DERIVATIVE:
            sched = DERIVATIVE_EPS_SCHEDULE
        return Regulators(epsilon=self.epsilon, lambda_ir=self.lambda_ir, eps_schedule=sched)

    def quad(self) -> QuadSpec:
        base = default_quad_spec(rel_tol=self.rel_tol, abs_tol=self.abs_tol)
        return replace(base, window=self.window)

    def to_dict(self) -> Dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def with_variable(self, variable: str, value: float) -> "Scenario":
        """Scenario with one sweep variable applied."""
        if variable in ("d_A", "d"):
            traj = self.mirror()
            z = 0.0 if traj is None else float(traj.mirror_position(self.t_a))
            return replace(self, x_a=z + value)
        if variable == "x_A":
            return replace(self, x_a=value)
        if variable == "dx":
            return replace(self, delta_x=value)
        if variable == "omega":
            return replace(self, omega=value)
        if variable == "t_A":
            return replace(self, t_a=value)
        if variable == "lambda_ir":
            return replace(self, lambda_ir=value)
        if variable == "sigma_scale":
            return replace(self, sigma=self.sigma * value)
        raise ValueError(f"unknown sweep variable {variable!r}")


@dataclass(frozen=True)
class SweepSpec:
    """Grid over one scenario variable."""

    variable: str
    start: float
    stop: float
    count: int
    log_spaced: bool = False
    scenario: Scenario = field(default_factory=Scenario)

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if self.count < 2:
            raise ValueError("count must be >= 2")
        if not self.start < self.stop:
            raise ValueError("start must be less than stop")
        if self.log_spaced and self.start <= 0.0:
            raise ValueError("log spacing needs positive start")

    def grid(self) -> np.ndarray:
        if self.log_spaced:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


def _nan_row(variable: str, value: float, message: str) -> Dict[str, object]:
    row = {c: math.nan for c in CSV_COLUMNS}
    row["sweep_var"] = variable
    row["value"] = value
    row["flags"] = f"error:{message}"
    return row


def evaluate_point(scenario: Scenario, variable: str = "", value: float = math.nan) -> Dict[str, object]:
    """One HarvestResult as a flat row dict; failures land in flags."""
    point = scenario if variable == "" else scenario.with_variable(variable, float(value))
    try:
        res = harvest(point.pair(), point.request(), point.regulators(), point.quad())
    except Exception as exc:  # per-point isolation: a sweep never aborts
        return _nan_row(variable, value, f"{type(exc).__name__}: {exc}")
    return {
        "sweep_var": variable,
        "value": value,
        "P_A": res.p_a,
        "P_B": res.p_b,
        "Re_X": res.x_nonlocal.real,
        "Im_X": res.x_nonlocal.imag,
        "abs_X": abs(res.x_nonlocal),
        "sqrt_PAPB": math.sqrt(res.p_a * res.p_b),
        "concurrence": res.concurrence,
        "negativity": res.negativity,
        "err_P_A": res.err["p_a"],
        "err_P_B": res.err["p_b"],
        "err_X": res.err["x"],
        "flags": ";".join(res.flags),
    }


def run_sweep(spec: SweepSpec, workers: int = 1) -> List[Dict[str, object]]:
    """Evaluate every grid point, rows in grid order."""
    values = spec.grid()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(evaluate_point, [spec.scenario] * len(values), [spec.variable] * len(values), values)
            )
        return rows
    return [evaluate_point(spec.scenario, spec.variable, v) for v in values]


def _fmt(x: object) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _header_lines(scenario: Optional[Scenario], sweep: Optional[SweepSpec]) -> List[str]:
    lines = []
    if scenario is not None:
        for key, val in scenario.to_dict().items():
            if key == "eps_schedule":
                val = ",".join(format(e, ".17g") for e in val)
            lines.append(f"# scenario.{key}={val}")
    if sweep is not None:
        lines.append(f"# sweep.variable={sweep.variable}")
        lines.append(f"# sweep.start={_fmt(sweep.start)}")
        lines.append(f"# sweep.stop={_fmt(sweep.stop)}")
        lines.append(f"# sweep.count={sweep.count}")
        lines.append(f"# sweep.log_spaced={sweep.log_spaced}")
    return lines


def emit(
    table: List[Dict[str, object]],
    fmt: str,
    path: str,
    scenario: Optional[Scenario] = None,
    sweep: Optional[SweepSpec] = None,
) -> None:
    """Write rows as CSV (with '#' scenario header) or JSON."""
    if fmt == "csv":
        lines = _header_lines(scenario, sweep)
        lines.append(",".join(CSV_COLUMNS))
        for row in table:
            lines.append(",".join(_fmt(row[c]) for c in CSV_COLUMNS))
        text = "\n".join(lines) + "\n"
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        return
    if fmt == "json":
        doc = {
            "scenario": scenario.to_dict() if scenario is not None else None,
            "sweep": None
            if sweep is None
            else {
                "variable": sweep.variable,
                "start": sweep.start,
                "stop": sweep.stop,
                "count": sweep.count,
                "log_spaced": sweep.log_spaced,
            },
            "columns": CSV_COLUMNS,
            "rows": table,
        }
        try:
            with open(path, "w") as fh:
                json.dump(doc, fh, indent=1)
                fh.write("\n")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        return
    raise ValueError(f"unknown format {fmt!r}")
