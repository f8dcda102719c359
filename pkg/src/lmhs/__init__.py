"""Exact-arithmetic workbench for the Hodge theory of degenerations.

Limiting mixed Hodge structures, perverse sheaves on a disk, Clemens-Schmid
and vanishing cycle sequences, cyclic base change, and multi-parameter
Koszul calculus, all over exact rational arithmetic.
"""

__version__ = "0.1.0"

from .hodge import HodgeDeligneDiagram, LmhsSpec, NString
from .ratlin import RationalMatrix, Subspace

__all__ = [
    "HodgeDeligneDiagram",
    "LmhsSpec",
    "NString",
    "RationalMatrix",
    "Subspace",
    "__version__",
]
