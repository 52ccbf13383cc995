"""Command-line interface: render figures from simulator CSV files."""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Optional, Sequence

from .io import SchemaError
from .render import FigureKind, FigureSpec, render


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxjump-figures",
        description="Render figures from fluxjump CSV artifacts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="render one figure from CSV inputs")
    r.add_argument("--kind", required=True,
                   choices=[k.value for k in FigureKind],
                   help="which figure to draw")
    r.add_argument("--in", dest="inputs", nargs="+", required=True,
                   metavar="FILE",
                   help="input CSV files; roles are recognized by header, so "
                        "a scatter file and its reference curve table can be "
                        "passed together")
    r.add_argument("--out", required=True, metavar="FILE",
                   help="image file to write (format from the suffix)")
    r.add_argument("--probe", type=float, default=None,
                   help="probe position to filter or select")
    r.add_argument("--ref-alpha", dest="ref_alpha", type=float, default=None,
                   help="overlay the flux curve of this parameter "
                        "(needs a flux-curve file among the inputs)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    spec = FigureSpec(
        kind=FigureKind(args.kind),
        inputs=tuple(args.inputs),
        probe=args.probe,
        reference_alpha=args.ref_alpha,
    )
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            out = render(spec, args.out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
