"""Finite topological preordered spaces and their quasi-pseudo-metrics.

Exact rational arithmetic throughout.  Subsets of ``{0..n-1}`` are int bitmasks.
"""

from .errors import (
    DimensionMismatch,
    EmptyFamily,
    InvalidSpace,
    NonTransitiveCore,
    NotAdmissible,
    NotAntisymmetric,
    NotCompletelyRegular,
    QPMSpaceError,
)
from .hilbert import CubePoint, Embedding, cube_qpm, embed, strict_embed, verify_order_embedding, verify_order_subspace
from .io import load_fixture, load_qpm, load_space
from .qpm import QPM, is_admissible, is_strictly_admissible, topology_of
from .space import FiniteSpace, property_report, quotient, subspace
from .synthesis import FnFamily, IsotoneFn, metrize, metrize_from_family, product, separating_family
from .verdict import Check

__version__ = "0.1.0"

__all__ = [
    "Check",
    "CubePoint",
    "DimensionMismatch",
    "Embedding",
    "EmptyFamily",
    "FiniteSpace",
    "FnFamily",
    "InvalidSpace",
    "IsotoneFn",
    "NonTransitiveCore",
    "NotAdmissible",
    "NotAntisymmetric",
    "NotCompletelyRegular",
    "QPM",
    "QPMSpaceError",
    "cube_qpm",
    "embed",
    "is_admissible",
    "is_strictly_admissible",
    "load_fixture",
    "load_qpm",
    "load_space",
    "metrize",
    "metrize_from_family",
    "product",
    "property_report",
    "quotient",
    "separating_family",
    "strict_embed",
    "subspace",
    "topology_of",
    "verify_order_embedding",
    "verify_order_subspace",
]
