"""figplot: render benchmark CSVs into figures.

Exit codes: 0 success, 1 schema/spec error, 64 usage.
"""
from __future__ import annotations

import argparse
import sys

from .render import render
from .spec import SpecError, load_spec
from .tables import dump_table

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    p = _Parser(prog="figplot", description="Render benchmark CSVs into figures.")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("plot", help="render one figure from a JSON spec")
    sp.add_argument("--spec", required=True, help="JSON plot spec file")
    sp.add_argument("--dump-table", action="store_true",
                    help="echo the plotted values exactly as read")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        tables = render(spec)
    except (SpecError, OSError) as exc:
        print(f"figplot: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.dump_table:
        for t in tables:
            sys.stdout.write(dump_table(t))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
