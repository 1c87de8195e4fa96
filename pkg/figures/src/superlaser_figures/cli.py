"""Command line: render figure reproductions from a run output directory.

    superlaser-figures render fig5 --data out/ [--label fig5] [--out fig5.svg] [--png]
    superlaser-figures list
"""

from __future__ import annotations

import argparse
import sys

from .data import MissingColumnError, MissingFileError
from .render import render
from .specs import available_figures, figure_spec


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="superlaser-figures")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render one figure layout")
    p_render.add_argument("figure", choices=available_figures())
    p_render.add_argument("--data", required=True, help="run output directory")
    p_render.add_argument("--label", default=None,
                          help="output file prefix of the run (default: figure name)")
    p_render.add_argument("--out", default=None, help="image path to write")
    p_render.add_argument("--png", action="store_true", help="write PNG instead of SVG")

    sub.add_parser("list", help="list available figure layouts")

    args = parser.parse_args(argv)
    if args.command == "list":
        for name in available_figures():
            print(name)
        return 0
    try:
        spec = figure_spec(args.figure, label=args.label)
        path = render(spec, args.data, out_path=args.out,
                      fmt="png" if args.png else "svg")
    except (MissingFileError, MissingColumnError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
