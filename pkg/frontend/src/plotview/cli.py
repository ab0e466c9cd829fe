"""Command-line entry: plotview --in summary.csv --kind vs_K --out dir/."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import MissingColumnsError, PlotSpec, plot


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotview",
        description="Render see-bandits summary CSVs into error-bar charts")
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="summary CSV produced by the experiment harness")
    parser.add_argument("--kind", choices=("vs_K", "vs_proportion"),
                        default="vs_K")
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="directory for images and plot-data dumps")
    parser.add_argument("--log-y", action="store_true",
                        help="logarithmic y axis")
    parser.add_argument("--format", default="png",
                        help="image format extension (default png)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(input_csv=Path(args.input_csv), out_dir=Path(args.out_dir),
                    kind=args.kind, log_y=args.log_y,
                    image_format=args.format)
    try:
        images = plot(spec)
    except FileNotFoundError as err:
        print(f"plotview: {err}", file=sys.stderr)
        return 2
    except MissingColumnsError as err:
        print(f"plotview: {err}", file=sys.stderr)
        return 2
    for path in images:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
