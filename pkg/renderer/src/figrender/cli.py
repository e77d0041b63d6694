"""Command-line interface: figrender render --kind K --in PATHS --out IMG.

Exit codes: 0 success, 1 validation/render failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .formats import RenderError
from .render import KINDS, RenderJob, render

__version__ = "0.1.0"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figrender",
        description="Render simulator output files into publication-style figures",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--in", dest="inputs", required=True, nargs="+",
                   metavar="PATH", help="input files (metrics CSV, field "
                   "binary, chi CSV; the needed one is picked by content)")
    p.add_argument("--out", required=True, help="output image path")
    p.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = RenderJob(kind=args.kind, inputs=tuple(args.inputs),
                        output=args.out, dpi=args.dpi)
        print(render(job))
    except (RenderError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
