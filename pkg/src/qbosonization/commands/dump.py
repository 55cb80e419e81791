from __future__ import annotations

import argparse
import sys

import numpy as np

from qbosonization import schema
from qbosonization.exceptions import BosonizationError
from qbosonization.models import AlgebraMode, Basis
from qbosonization.services.config_service import parse_basis, parse_number
from qbosonization.services.conversion_service import ConversionService
from qbosonization.services.fock_service import FockRep, format_number, rep_matrix
from qbosonization.services.realization_service import realization_matrix, realization_repository


def register(subparsers) -> None:
    dump = subparsers.add_parser("dump-matrix", help="Print or save the Fock matrix of one realization entry")
    dump.add_argument("name", help="Catalog name, e.g. Eq12")
    dump.add_argument("entry", choices=list("abcd"), help="Matrix entry")
    dump.add_argument("--dim", type=int, default=4, help="Fock truncation dimension D")
    dump.add_argument("--q", default="3/2", help="q value, e.g. 0.8 or 3/2")
    dump.add_argument("--basis", default=Basis.EXACT.value, help="Exact or Normalized")
    dump.add_argument("--param", action="append", default=[], help="Parameter value, symbol=value; repeatable")
    dump.add_argument("--json", dest="json_path", help="Write [re, im] pairs to this path")
    dump.set_defaults(handler=run_dump)


def run_dump(args: argparse.Namespace) -> int:
    try:
        params = {}
        for item in args.param:
            symbol, _, value = item.partition("=")
            if symbol.strip() not in schema.PARAMETER_SYMBOLS:
                raise ValueError(f"unknown parameter '{symbol}'")
            params[symbol.strip()] = parse_number(value)
        spec = realization_repository.get(args.name).spec
        rep = FockRep.create(args.dim, parse_number(args.q), parse_basis(args.basis), spec.oscillators, params)
        T = realization_matrix(args.name, AlgebraMode.GENERIC)
        matrix = rep_matrix(getattr(T, args.entry), rep)
    except (BosonizationError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2

    label = f"{args.name}.{args.entry}"
    if args.json_path:
        path = ConversionService.write(args.json_path, ConversionService.matrix_to_json(matrix, label))
        print(f"✓ Matrix {label} saved to: {path}")
        return 0

    print(f"{label}  (D={rep.dim}, q={format_number(rep.q_value)}, {rep.basis.value} basis, "
          f"raising excess {list(matrix.excess)})")
    dense = matrix.to_array()
    width = max((len(format_number(v)) for v in np.ravel(dense)), default=1)
    for row in dense:
        print("  " + " ".join(format_number(v).rjust(width) for v in row))
    return 0
