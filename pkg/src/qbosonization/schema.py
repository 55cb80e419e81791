"""
Naming schema for symbols, relations and report cells.

Every check recorded in a report carries one of the relation names below, so the
names double as the keys of the catalog's expected-failure tables.

SYMBOLS:
========

Scalars are Laurent polynomials in a fixed symbol set. The order of SYMBOLS is the
order of the exponent vector and therefore the order used when terms are sorted
for rendering:

    q, alpha, beta, gamma, delta, mu, nu, sigma, D, Lambda

`Lambda` stands for 1/(q - q^-1). It only appears once a product a+ a- has been
rewritten through the Fock-restricted relation a+ a- = [N].

RELATIONS:
==========

GL_q(2), with q replaced by q^n when checking the n-th power of a matrix:

    ab=q*ba   ac=q*ca   bd=q*db   cd=q*dc   bc=cb   ad-da=lambda*bc

Quantum determinant (D = ad - q bc):

    qdet:forms-agree     ad - q bc == da - q^-1 bc
    qdet:central[x]      [D, x] == 0 for x in a, b, c, d
    qdet:value           D == catalogued value
    qdet:AB              D == A B for Gauss-built matrices

q-Weyl relations of the Gauss factors:

    AB=BA   Au=q*uA   Az=q*zA   uB=q*Bu   zB=q*Bz   uz=zu

Relations involving d^-1:

    dinv:c   dinv:b   dinv:commute   dinv:a   dinv:qdet
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

SYMBOLS: Tuple[str, ...] = (
    "q", "alpha", "beta", "gamma", "delta", "mu", "nu", "sigma", "D", "Lambda",
)
SYMBOL_INDEX: Dict[str, int] = {name: i for i, name in enumerate(SYMBOLS)}
Q_INDEX = SYMBOL_INDEX["q"]
LAMBDA_INDEX = SYMBOL_INDEX["Lambda"]

PARAMETER_SYMBOLS: Tuple[str, ...] = ("alpha", "beta", "gamma", "delta", "mu", "nu", "sigma", "D")

# Numeric backend defaults; relations are homogeneous in every parameter.
DEFAULT_PARAMETERS: Dict[str, Fraction] = {name: Fraction(1) for name in PARAMETER_SYMBOLS}

GL2Q_RELATIONS: Tuple[str, ...] = (
    "ab=q*ba", "ac=q*ca", "bd=q*db", "cd=q*dc", "bc=cb", "ad-da=lambda*bc",
)
QDET_FORMS = "qdet:forms-agree"
QDET_VALUE = "qdet:value"
QDET_AB = "qdet:AB"
QDET_CENTRAL: Tuple[str, ...] = tuple(f"qdet:central[{x}]" for x in "abcd")
QWEYL_RELATIONS: Tuple[str, ...] = ("AB=BA", "Au=q*uA", "Az=q*zA", "uB=q*Bu", "zB=q*Bz", "uz=zu")
DINV_RELATIONS: Tuple[str, ...] = ("dinv:c", "dinv:b", "dinv:commute", "dinv:a", "dinv:qdet")
GAUSS_ROUND_TRIP = "gauss:round-trip"
SLQ2_CONDITION = "slq2:qdet=1"

# Cells that do not belong to a catalog realization.
OSCILLATOR_CELL = "oscillator"
QDIFF_CELL = "qdiff"
ACTIONS_CELL = "eq12-actions"

# Harness defaults, overridable through settings, config file and CLI.
DEFAULT_DIM = 16
DEFAULT_Q_VALUES: Tuple[str, ...] = ("0.8", "3/2")
DEFAULT_TOLERANCE = 1e-9
DEFAULT_SEED = 0
DEFAULT_BASIS = "Normalized"
ACTIONS_TOLERANCE = 1e-12
ACTIONS_MAX_LEVEL = 12

# Relations that need a+ a- = [N] and therefore fail in Generic mode.
OSCILLATOR_GENERIC_FAILURES: Tuple[str, ...] = (
    "osc:a-a+-q^-1*a+a-=K", "osc:a+a-=[N]", "osc:a-a+=[N+1]", "osc:zeta=0",
)
PRINTED_B_COEFFICIENT = "action:b-printed"
# Random numeric cell: |q| and arg q ranges, parameter range.
RANDOM_Q_RADIUS = (0.6, 0.9)
RANDOM_Q_ANGLE = (0.2, 1.2)
RANDOM_PARAMETER_RANGE = (0.5, 2.0)
