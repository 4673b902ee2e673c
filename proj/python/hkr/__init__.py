"""Exact HKR invariants over finite-dimensional ribbon Hopf algebras."""

from ._hkr import (
    AlgElem,
    ConsistencyError,
    Context,
    CycNum,
    Diagram,
    HopfAlgebra,
    PreconditionError,
    StructureError,
    group_algebra,
    hom_count,
    run,
    uqsl2,
)

__all__ = [
    "AlgElem",
    "ConsistencyError",
    "Context",
    "CycNum",
    "Diagram",
    "HopfAlgebra",
    "PreconditionError",
    "StructureError",
    "group_algebra",
    "hom_count",
    "run",
    "uqsl2",
]
