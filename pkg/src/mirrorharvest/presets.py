"""Figure presets: fully specified sweeps reproducing the published panels.

Each preset maps to one or more labeled curves. Curves are either harvesting
sweeps (run through the full two-detector pipeline) or single-detector
probability grids evaluated with the semi-analytic reduced formulas.

Documented assumptions where a caption leaves a value unstated:
  - fig2L/fig2R captions give sigma = 1 and gaps 0.75 and 1.0 but only the
    right panel's separation (3 sigma); the left panel uses 1 sigma.
  - fig4 fixes t_A = t_B = -1 and inherits kappa*sigma = 0.5, omega*sigma = 1;
    separations 1, 2, 3 sigma cover its three panels.
  - fig5 separations are not enumerated; 1, 2, 3 sigma are exposed.
  - fig9_ir (concurrence vs IR cutoff) uses separation 1 sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .appendix import StaticProbeSpec, p_free_1p1, p_free_3p1, p_image_3p1, p_static_1p1
from .correlators import DERIVATIVE, LINEAR
from .quadrature import QuadSpec
from .sweep import CSV_COLUMNS, FREE_SPACE, Scenario, SweepSpec, run_sweep
from .trajectories import BLACK_HOLE_COLLAPSE, CARLITZ_WILLEY, STATIC

__all__ = ["PRESET_NAMES", "preset_curves", "run_preset_curve", "PresetCurve"]


@dataclass(frozen=True)
class PresetCurve:
    """One labeled curve of a figure preset."""

    label: str
    sweep: Optional[SweepSpec] = None
    rows_fn: Optional[Callable[[int], List[Dict[str, object]]]] = None
    default_count: int = 41
    baseline: bool = False  # free-space reference, drawn dashed

    def with_count(self, count: int) -> "PresetCurve":
        if self.sweep is None:
            return replace(self, default_count=count)
        return replace(self, sweep=replace(self.sweep, count=count), default_count=count)


def run_preset_curve(curve: PresetCurve, workers: int = 1) -> List[Dict[str, object]]:
    if curve.sweep is not None:
        return run_sweep(curve.sweep, workers=workers)
    return curve.rows_fn(curve.default_count)


def _p_row(variable: str, value: float, p: float) -> Dict[str, object]:
    row = {c: math.nan for c in CSV_COLUMNS}
    row.update(sweep_var=variable, value=value, P_A=p, err_P_A=0.0, flags="")
    return row


def _appendix_curve(label: str, p_of_d: Callable[[float], float], baseline: bool = False) -> PresetCurve:
    def rows(count: int) -> List[Dict[str, object]]:
        grid = np.geomspace(0.1, 300.0, count)
        return [_p_row("d", float(d), p_of_d(float(d))) for d in grid]

    return PresetCurve(label=label, rows_fn=rows, baseline=baseline)


def _constant_curve(base: SweepSpec) -> SweepSpec:
    # Free-space reference: independent of the swept geometry variable, so
    # two points spanning the same range suffice.
    return replace(base, count=2, scenario=replace(base.scenario, trajectory=FREE_SPACE))


def _sweep(scenario: Scenario, variable: str, start: float, stop: float, count: int = 41, log=False):
    return SweepSpec(variable=variable, start=start, stop=stop, count=count, log_spaced=log, scenario=scenario)


def _fig2(delta_x: float) -> List[PresetCurve]:
    curves = []
    for gap in (0.75, 1.0):
        sc = Scenario(trajectory=STATIC, omega=gap, delta_x=delta_x, t_a=0.0, t_b=0.0)
        sw = _sweep(sc, "d_A", 0.05, 10.0)
        curves.append(PresetCurve(label=f"mirror_gap{gap:g}", sweep=sw))
        curves.append(
            PresetCurve(label=f"free_gap{gap:g}", sweep=_constant_curve(sw), baseline=True)
        )
    return curves


def _fig3(t_center: float) -> List[PresetCurve]:
    sc = Scenario(
        trajectory=CARLITZ_WILLEY,
        kappa=0.5,
        delta_x=2.0,
        t_a=t_center,
        t_b=t_center,
    )
    sw = _sweep(sc, "d_A", 0.2, 12.0)
    return [
        PresetCurve(label="mirror", sweep=sw),
        PresetCurve(label="free", sweep=_constant_curve(sw), baseline=True),
    ]


def _fig4(separations: Tuple[float, ...]) -> List[PresetCurve]:
    curves = []
    for dx in separations:
        sc = Scenario(trajectory=CARLITZ_WILLEY, kappa=0.5, delta_x=dx, t_a=-1.0, t_b=-1.0)
        curves.append(PresetCurve(label=f"mirror_dx{dx:g}", sweep=_sweep(sc, "d_A", 0.2, 12.0)))
    return curves


def _fig5(t_center: float) -> List[PresetCurve]:
    curves = []
    for dx in (1.0, 2.0, 3.0):
        sc = Scenario(
            trajectory=BLACK_HOLE_COLLAPSE,
            kappa=0.25,
            v_horizon=0.0,
            delta_x=dx,
            t_a=t_center,
            t_b=t_center,
        )
        curves.append(PresetCurve(label=f"mirror_dx{dx:g}", sweep=_sweep(sc, "d_A", 0.2, 12.0)))
    return curves


def _fig7() -> List[PresetCurve]:
    sc = Scenario(
        trajectory=CARLITZ_WILLEY, kappa=0.5, coupling=DERIVATIVE, delta_x=1.0, t_a=0.0, t_b=0.0
    )
    sw = _sweep(sc, "x_A", 0.2, 100.0, count=31, log=True)
    return [
        PresetCurve(label="mirror", sweep=sw),
        PresetCurve(label="free", sweep=_constant_curve(sw), baseline=True),
    ]


def _fig8() -> List[PresetCurve]:
    def total(d: float) -> float:
        spec = StaticProbeSpec(omega=1.0, sigma=1.0, d=d, eps=1e-4)
        return p_free_3p1(spec) + p_image_3p1(spec)

    free = p_free_3p1(StaticProbeSpec(omega=1.0, sigma=1.0, d=1.0, eps=1e-4))
    return [
        _appendix_curve("boundary", total),
        _appendix_curve("free", lambda d: free, baseline=True),
    ]


def _fig9_1p1() -> List[PresetCurve]:
    def mirror(d: float) -> float:
        return p_static_1p1(StaticProbeSpec(omega=1.0, sigma=1.0, d=d, eps=1e-4))

    free = p_free_1p1(StaticProbeSpec(omega=1.0, sigma=1.0, d=1.0, eps=1e-4, lambda_ir=1e-12))
    return [
        _appendix_curve("mirror", mirror),
        _appendix_curve("free", lambda d: free, baseline=True),
    ]


def _fig9_ir() -> List[PresetCurve]:
    sc = Scenario(trajectory=FREE_SPACE, omega=1.0, delta_x=1.0, x_a=0.0)
    sw = _sweep(sc, "lambda_ir", 1e-10, 1e-1, count=19, log=True)
    return [PresetCurve(label="free", sweep=sw)]


_BUILDERS: Dict[str, Callable[[], List[PresetCurve]]] = {
    "fig2L": lambda: _fig2(1.0),
    "fig2R": lambda: _fig2(3.0),
    "fig3L": lambda: _fig3(-20.0),
    "fig3R": lambda: _fig3(20.0),
    "fig4L": lambda: _fig4((1.0, 2.0, 3.0)),
    "fig4M": lambda: _fig4((2.0,)),
    "fig4R": lambda: _fig4((3.0,)),
    "fig5L": lambda: _fig5(-20.0),
    "fig5R": lambda: _fig5(20.0),
    "fig7L": _fig7,
    "fig7R": _fig7,
    "fig8": _fig8,
    "fig9_1p1": _fig9_1p1,
    "fig9_ir": _fig9_ir,
}

PRESET_NAMES = tuple(sorted(_BUILDERS))


def preset_curves(name: str, count: Optional[int] = None) -> List[PresetCurve]:
    """Labeled curves for a figure preset, optionally with overridden count."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    curves = _BUILDERS[name]()
    if count is not None:
        curves = [c.with_count(count) for c in curves]
    return curves
