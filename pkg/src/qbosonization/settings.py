from __future__ import annotations

import os
from typing import Any, Dict

from qbosonization import schema


def env_defaults() -> Dict[str, Any]:
    """Suite defaults with environment overrides applied.

    Values are returned as raw text where the environment supplies them; the config
    service validates them like any other source.
    """
    return {
        "dim": os.getenv("QBOSON_DIM", str(schema.DEFAULT_DIM)),
        "tol": os.getenv("QBOSON_TOL", str(schema.DEFAULT_TOLERANCE)),
        "seed": os.getenv("QBOSON_SEED", str(schema.DEFAULT_SEED)),
        "basis": os.getenv("QBOSON_BASIS", schema.DEFAULT_BASIS),
    }
