"""Command line renderer: harvestcli CSVs in, one image out.

    harvestplots render curve1.csv curve2.csv --output fig.png \
        --y concurrence --xlabel 'd_A / sigma' --ylabel 'C / lambda^2'
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .render import PlotJob, load_style, render
from .schema import SchemaError

EXIT_OK = 0
EXIT_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harvestplots",
        description="Render harvestcli sweep CSVs as figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure from one or more CSVs")
    p.add_argument("inputs", nargs="+", help="harvestcli CSV files, one curve each")
    p.add_argument("--output", required=True, help="image path (.png or .svg)")
    p.add_argument("--x", default="value", dest="x_column", help="x column (default: value)")
    p.add_argument("--y", default="concurrence", dest="y_column", help="y column (default: concurrence)")
    p.add_argument("--xlabel", default="", dest="x_label")
    p.add_argument("--ylabel", default="", dest="y_label")
    p.add_argument("--title", default="")
    p.add_argument("--log-x", action="store_true", dest="log_x")
    p.add_argument("--log-y", action="store_true", dest="log_y")
    p.add_argument("--style", help="JSON style file overriding the default")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    style = load_style(args.style) if args.style else {}
    job = PlotJob(
        inputs=args.inputs,
        output=args.output,
        x_column=args.x_column,
        y_column=args.y_column,
        x_label=args.x_label,
        y_label=args.y_label,
        title=args.title,
        log_x=args.log_x,
        log_y=args.log_y,
        style=style,
    )
    try:
        path = render(job)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
