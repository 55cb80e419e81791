from __future__ import annotations

import argparse
import sys

from qbosonization.exceptions import BosonizationError
from qbosonization.models import AlgebraMode
from qbosonization.services.config_service import parse_mode
from qbosonization.services.matrix_service import GaussFactors
from qbosonization.services.realization_service import (
    catalog,
    displayed_entries,
    expected_qdet,
    make_realization,
    realization_matrix,
    realization_repository,
)


def register(subparsers) -> None:
    listing = subparsers.add_parser("list", help="List the realization catalog")
    listing.set_defaults(handler=run_list)

    explain = subparsers.add_parser("explain", help="Print a realization's entries in normal form")
    explain.add_argument("name", help="Catalog name, e.g. Eq12")
    explain.add_argument("--mode", default=AlgebraMode.GENERIC.value, help="Generic or FockRestricted")
    explain.set_defaults(handler=run_explain)


def run_list(args: argparse.Namespace) -> int:
    print("=" * 60)
    print("REALIZATION CATALOG")
    print("=" * 60)
    for spec in catalog():
        params = ", ".join(spec.parameters)
        print(f"{spec.name:<10} {spec.oscillators} osc  {spec.backend.value:<11} "
              f"expected in {spec.expected_mode.value}")
        print(f"    parameters: {params}")
        print(f"    {spec.source}")
    return 0


def run_explain(args: argparse.Namespace) -> int:
    try:
        mode = parse_mode(args.mode)
        record = realization_repository.get(args.name)
        built = make_realization(args.name, mode)
        T = realization_matrix(args.name, mode)
    except (BosonizationError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2

    spec = record.spec
    print("=" * 60)
    print(f"{spec.name} ({mode.value})")
    print("=" * 60)
    print(f"Source: {spec.source}")
    if spec.notes:
        print(f"Notes:  {spec.notes}")
    if isinstance(built, GaussFactors):
        print("\nGauss factors:")
        for label, value in (("u", built.u), ("z", built.z), ("A", built.A), ("B", built.B)):
            print(f"  {label} = {value.render()}")
    print("\nEntries:")
    for label, value in zip("abcd", T.entries()):
        print(f"  {label} = {value.render()}")
    printed = displayed_entries(args.name, mode)
    if printed:
        print("\nPrinted forms:")
        for label, value in printed.items():
            marker = "✓" if value == getattr(T, label) else "✗"
            print(f"  {marker} {label} = {value.render()}")
    print(f"\nCatalogued qdet: {expected_qdet(args.name, mode).render()}")
    return 0
