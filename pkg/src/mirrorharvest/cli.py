"""Batch command line interface.

Subcommands:
  point     evaluate a single scenario and print the result as JSON
  sweep     run a one-variable parameter sweep, write CSV or JSON
  preset    run a named figure preset (one output file per curve)
  appendix  run the semi-analytic static-boundary check grids

Scenario parameters come from an optional flat key=value config file plus
command-line flags; flags override the file. Exit status: 0 on success, 3 if
any point carries warnings, 1 if any point errored.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from typing import Dict, List, Optional

import numpy as np

from .appendix import StaticProbeSpec, p_free_3p1, p_image_3p1, p_rate_limit, p_static_1p1
from .presets import PRESET_NAMES, preset_curves, run_preset_curve
from .sweep import Scenario, SweepSpec, emit, evaluate_point, run_sweep

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_WARNINGS = 3

# config key -> (Scenario field, parser)
_BOOL = lambda s: s.strip().lower() in ("1", "true", "yes", "on")
_SCHED = lambda s: tuple(float(x) for x in s.split(",") if x.strip())
_CONFIG_KEYS = {
    "trajectory.kind": ("trajectory", str),
    "trajectory.kappa": ("kappa", float),
    "trajectory.v_horizon": ("v_horizon", float),
    "coupling": ("coupling", str),
    "detectors.omega": ("omega", float),
    "detectors.sigma": ("sigma", float),
    "detectors.separation": ("delta_x", float),
    "detector_a.t_center": ("t_a", float),
    "detector_b.t_center": ("t_b", float),
    "detector_a.x_pos": ("x_a", float),
    "regulators.epsilon": ("epsilon", float),
    "regulators.eps_schedule": ("eps_schedule", _SCHED),
    "regulators.lambda_ir": ("lambda_ir", float),
    "quad.rel_tol": ("rel_tol", float),
    "quad.abs_tol": ("abs_tol", float),
    "quad.window": ("window", float),
}
_SWEEP_KEYS = {
    "sweep.variable": ("variable", str),
    "sweep.start": ("start", float),
    "sweep.stop": ("stop", float),
    "sweep.count": ("count", int),
    "sweep.log_spaced": ("log_spaced", _BOOL),
}


def parse_config(path: str):
    """Flat key=value file; '#' starts a comment; unknown keys rejected."""
    scenario_kv: Dict[str, object] = {}
    sweep_kv: Dict[str, object] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            if key in _CONFIG_KEYS:
                field, conv = _CONFIG_KEYS[key]
                scenario_kv[field] = conv(val)
            elif key in _SWEEP_KEYS:
                field, conv = _SWEEP_KEYS[key]
                sweep_kv[field] = conv(val)
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return scenario_kv, sweep_kv


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--trajectory", choices=["free", "static", "carlitz_willey", "black_hole_collapse"])
    p.add_argument("--kappa", type=float)
    p.add_argument("--v-horizon", type=float, dest="v_horizon")
    p.add_argument("--coupling", choices=["linear", "derivative"])
    p.add_argument("--omega", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--t-a", type=float, dest="t_a")
    p.add_argument("--t-b", type=float, dest="t_b")
    p.add_argument("--x-a", type=float, dest="x_a")
    p.add_argument("--dx", type=float, dest="delta_x")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--eps-schedule", type=_SCHED, dest="eps_schedule")
    p.add_argument("--lambda-ir", type=float, dest="lambda_ir")
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--abs-tol", type=float, dest="abs_tol")
    p.add_argument("--window", type=float)


def _scenario_from(args: argparse.Namespace) -> Scenario:
    kv: Dict[str, object] = {}
    if args.config:
        file_kv, _ = parse_config(args.config)
        kv.update(file_kv)
    for field in (
        "trajectory", "kappa", "v_horizon", "coupling", "omega", "sigma", "t_a", "t_b",
        "x_a", "delta_x", "epsilon", "eps_schedule", "lambda_ir",
        "rel_tol", "abs_tol", "window",
    ):
        val = getattr(args, field, None)
        if val is not None:
            kv[field] = val
    return Scenario(**kv)


def _exit_code(rows: List[Dict[str, object]]) -> int:
    code = EXIT_OK
    for row in rows:
        flags = str(row.get("flags", ""))
        if "error:" in flags:
            return EXIT_ERROR
        if flags:
            code = EXIT_WARNINGS
    return code


def _cmd_point(args) -> int:
    scenario = _scenario_from(args)
    row = evaluate_point(scenario)
    row["scenario"] = scenario.to_dict()
    print(json.dumps(row, indent=1, default=str))
    return _exit_code([row])


def _cmd_sweep(args) -> int:
    scenario = _scenario_from(args)
    sweep_kv: Dict[str, object] = {}
    if args.config:
        _, sweep_kv = parse_config(args.config)
    for field in ("variable", "start", "stop", "count"):
        val = getattr(args, field)
        if val is not None:
            sweep_kv[field] = val
    if args.log:
        sweep_kv["log_spaced"] = True
    missing = [k for k in ("variable", "start", "stop", "count") if k not in sweep_kv]
    if missing:
        print(f"sweep: missing {', '.join(missing)} (flags or config)", file=sys.stderr)
        return EXIT_ERROR
    spec = SweepSpec(scenario=scenario, **sweep_kv)
    rows = run_sweep(spec, workers=args.workers)
    emit(rows, args.format, args.output, scenario=scenario, sweep=spec)
    print(f"wrote {args.output} ({len(rows)} rows)")
    return _exit_code(rows)


def _cmd_preset(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    code = EXIT_OK
    for curve in preset_curves(args.name, count=args.count):
        rows = run_preset_curve(curve, workers=args.workers)
        path = os.path.join(args.outdir, f"{args.name}_{curve.label}.{args.format}")
        scenario = curve.sweep.scenario if curve.sweep is not None else None
        label = "baseline" if curve.baseline else "curve"
        if curve.sweep is not None and curve.baseline:
            scenario = replace(scenario, label="baseline")
        emit(rows, args.format, path, scenario=scenario, sweep=curve.sweep)
        print(f"wrote {path} ({len(rows)} rows, {label})")
        code = max(code, _exit_code(rows)) if code != EXIT_ERROR else code
        if _exit_code(rows) == EXIT_ERROR:
            code = EXIT_ERROR
    return code


def _cmd_appendix(args) -> int:
    lines: List[str] = []
    if args.check == "static_1p1":
        lines.append("omega,d,P_static_1p1")
        for omega in (0.5, 1.0, 2.0):
            for d in (0.5, 1.0, 5.0, 20.0):
                p = p_static_1p1(StaticProbeSpec(omega=omega, d=d, eps=args.epsilon))
                lines.append(f"{omega:.17g},{d:.17g},{p:.17g}")
    elif args.check == "rate_limit":
        lines.append("omega,d,sigma,P_over_sigma,limit")
        for sigma in (1.0, 5.0, 20.0, 50.0):
            spec = StaticProbeSpec(omega=-1.0, sigma=sigma, d=1.0, eps=args.epsilon)
            lines.append(
                f"-1,1,{sigma:.17g},{p_static_1p1(spec) / sigma:.17g},{p_rate_limit(-1.0, 1.0):.17g}"
            )
    elif args.check == "image_3p1":
        lines.append("d,P_free,P_image")
        for d in np.geomspace(0.1, 100.0, 13):
            spec = StaticProbeSpec(omega=1.0, d=float(d), eps=args.epsilon)
            lines.append(f"{d:.17g},{p_free_3p1(spec):.17g},{p_image_3p1(spec):.17g}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harvestcli",
        description="Entanglement harvesting near static and accelerating mirrors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="single scenario, JSON to stdout")
    _add_scenario_flags(p_point)
    p_point.set_defaults(func=_cmd_point)

    p_sweep = sub.add_parser("sweep", help="one-variable sweep to CSV/JSON")
    _add_scenario_flags(p_sweep)
    p_sweep.add_argument("--variable", choices=["d_A", "x_A", "dx", "omega", "t_A", "lambda_ir", "sigma_scale", "d"])
    p_sweep.add_argument("--start", type=float)
    p_sweep.add_argument("--stop", type=float)
    p_sweep.add_argument("--count", type=int)
    p_sweep.add_argument("--log", action="store_true")
    p_sweep.add_argument("--output", default="sweep.csv")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_preset = sub.add_parser("preset", help="run a figure preset")
    p_preset.add_argument("name", choices=list(PRESET_NAMES))
    p_preset.add_argument("--outdir", default=".")
    p_preset.add_argument("--count", type=int)
    p_preset.add_argument("--format", choices=["csv", "json"], default="csv")
    p_preset.add_argument("--workers", type=int, default=1)
    p_preset.set_defaults(func=_cmd_preset)

    p_app = sub.add_parser("appendix", help="semi-analytic check grids")
    p_app.add_argument("check", choices=["static_1p1", "rate_limit", "image_3p1"])
    p_app.add_argument("--epsilon", type=float, default=1e-4)
    p_app.add_argument("--output")
    p_app.set_defaults(func=_cmd_appendix)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
