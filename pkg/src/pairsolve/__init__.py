"""Edge-disjoint path resolution of demand multigraphs on complete graphs."""

from .core import (
    DemandGraph,
    Instance,
    RouteLedger,
    extract_resolution,
    new_session,
)
from .errors import InternalError, PreconditionError
from .oracle import brute_force_resolve
from .regular import solve_regular
from .sparse import solve_sparse
from .verifier import Violation, verify

__all__ = [
    "DemandGraph",
    "Instance",
    "InternalError",
    "PreconditionError",
    "RouteLedger",
    "Violation",
    "brute_force_resolve",
    "extract_resolution",
    "new_session",
    "solve_regular",
    "solve_sparse",
    "verify",
]
