from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from qbosonization import __version__


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbosonization",
        description="Verify q-oscillator realizations of the quantum group GL_q(2).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    from qbosonization.commands.catalog import register as register_catalog
    from qbosonization.commands.dump import register as register_dump
    from qbosonization.commands.verify import register as register_verify
    register_catalog(subparsers)
    register_verify(subparsers)
    register_dump(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
