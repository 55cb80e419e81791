from __future__ import annotations

import argparse
import sys
from typing import Dict, Optional

from qbosonization.exceptions import ConfigError
from qbosonization.models import Outcome, SuiteConfig, SuiteReport
from qbosonization.services.config_service import config_service
from qbosonization.services.conversion_service import ConversionService
from qbosonization.services.suite_service import SuiteService

_MARKS = {
    Outcome.PASS: "✓",
    Outcome.EXPECTED_FAIL: "✓",
    Outcome.UNEXPECTED_FAIL: "✗",
    Outcome.UNEXPECTED_PASS: "✗",
    Outcome.SKIPPED: "-",
}


def add_suite_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags mirroring the config file keys; unset flags leave lower sources in charge."""
    parser.add_argument("--config", help="Config file (key = value, [parameters], [realization.<name>])")
    parser.add_argument("--realization", action="append", help="Catalog name or 'all'; repeatable")
    parser.add_argument("--mode", action="append", help="Generic or FockRestricted; repeatable")
    parser.add_argument("--backend", action="append", help="symbolic or numeric; repeatable")
    parser.add_argument("--dim", help="Fock truncation dimension D")
    parser.add_argument("--q", action="append", help="Numeric q value, e.g. 0.8 or 3/2; repeatable")
    parser.add_argument("--tol", help="Relative tolerance for float representations")
    parser.add_argument("--seed", help="Seed for the random q cell and property samples")
    parser.add_argument("--q-power", dest="q_power", help="Check T^n with q replaced by q^n")
    parser.add_argument("--basis", help="Exact or Normalized Fock basis for float q")
    parser.add_argument("--param", action="append", default=[], help="Parameter value, symbol=value; repeatable")
    parser.add_argument("--random-q", dest="random_q", action=argparse.BooleanOptionalAction, default=None,
                        help="Add a seeded random complex q cell")
    parser.add_argument("--auxiliary", action=argparse.BooleanOptionalAction, default=None,
                        help="Run the oscillator, matrix-element and q-difference cells")


def register(subparsers) -> None:
    verify = subparsers.add_parser("verify", help="Run the verification suite")
    add_suite_arguments(verify)
    verify.add_argument("--json", dest="json_path", help="Write the JSON report to this path")
    verify.set_defaults(handler=run_verify)


def _joined(values) -> Optional[str]:
    return ",".join(values) if values else None


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    file_values = config_service.load_file(args.config) if args.config else None
    options: Dict[str, Optional[object]] = {
        "realizations": _joined(args.realization),
        "modes": _joined(args.mode),
        "backends": _joined(args.backend),
        "dim": args.dim,
        "q": _joined(args.q),
        "tol": args.tol,
        "seed": args.seed,
        "q_power": args.q_power,
        "basis": args.basis,
        "random_q": args.random_q,
        "auxiliary": args.auxiliary,
    }
    cli_values = config_service.cli_values(options, args.param)
    return config_service.resolve(file_values, cli_values)


def print_report(report: SuiteReport) -> None:
    print("=" * 60)
    print("VERIFICATION REPORT")
    print("=" * 60)
    for cell in report.cells:
        where = f"{cell.realization} [{cell.mode}/{cell.backend}"
        where += f" q={cell.q_value}]" if cell.q_value else "]"
        print(f"{_MARKS[cell.outcome]} {where}: {cell.outcome.value}")
        if cell.note:
            print(f"    {cell.note}")
        if cell.qdet:
            print(f"    qdet = {cell.qdet}")
        for check in cell.checks:
            if check.outcome in (Outcome.PASS, None):
                continue
            print(f"    {_MARKS[check.outcome]} {check.relation}: {check.outcome.value}")
            if check.witness:
                print(f"        {check.witness}")
    print("-" * 60)
    counts = ", ".join(f"{name}={count}" for name, count in report.outcome_counts().items())
    print(f"Checks: {counts}")
    print("✓ All outcomes match the catalog" if report.exit_code == 0 else "✗ Unexpected outcomes present")


def run_verify(args: argparse.Namespace) -> int:
    try:
        config = config_from_args(args)
    except ConfigError as e:
        print("Configuration error:", file=sys.stderr)
        for message in e.diagnostics:
            print(f"  - {message}", file=sys.stderr)
        return 2

    report = SuiteService().run(config)
    print_report(report)
    if args.json_path:
        path = ConversionService.write(args.json_path, ConversionService.report_to_json(report))
        print(f"✓ JSON report saved to: {path}")
    return report.exit_code
