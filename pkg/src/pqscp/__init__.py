"""Heaviest strictly chained (p,q)-ary partitions and the maximal weight G(m)."""

from .core import ChainPartition, LatticePoint, Params, h, heaviest_chain, validate_params
from .errors import (
    BudgetExceeded,
    CapExceeded,
    Dependent,
    InvariantViolation,
    OutOfRange,
    PQError,
    PrecisionEscalationFailed,
)
from .fastalg import g_fast, kn_representation, run_fast, y_fast, z_fast
from .frontier import y_min, y_set, z_max, z_set
from .oracle import g_exhaustive, g_frontier_scan, g_recursive

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "ChainPartition",
    "Dependent",
    "InvariantViolation",
    "LatticePoint",
    "OutOfRange",
    "PQError",
    "Params",
    "PrecisionEscalationFailed",
    "g_exhaustive",
    "g_fast",
    "g_frontier_scan",
    "g_recursive",
    "h",
    "heaviest_chain",
    "kn_representation",
    "run_fast",
    "validate_params",
    "y_fast",
    "y_min",
    "y_set",
    "z_fast",
    "z_max",
    "z_set",
]
