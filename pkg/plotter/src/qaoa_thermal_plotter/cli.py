"""CLI entry point: plot --kind <kind> --in <csv> --out <img> [--vmin --vmax --title]."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .figures import FigureKind, FigureSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoa-thermal-plot",
        description="Render figures from qaoa-thermal sweep/analysis CSVs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--kind", required=True, choices=[k.value for k in FigureKind])
    parser.add_argument("--in", dest="input_csv", required=True, help="input CSV path")
    parser.add_argument("--out", dest="output_image", required=True, help="output image path")
    parser.add_argument("--vmin", type=float)
    parser.add_argument("--vmax", type=float)
    parser.add_argument("--title")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=args.input_csv,
        kind=FigureKind(args.kind),
        output_image=args.output_image,
        title=args.title,
        vmin=args.vmin,
        vmax=args.vmax,
    )
    try:
        path = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
