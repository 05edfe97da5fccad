"""Exact toolkit for CSS codes, integer lifts of their chain complexes, and
code lifting from covering-space data."""

from .css import CodeParams, CssCode, distance, new_css, parameters
from .checkgraph import (
    BettiDescriptor,
    MultCopyGraph,
    PairedGraph,
    betti_components,
    multigraph_z,
    pair_edges,
)
from .cover import (
    LiftedCode,
    VoltageAssignment,
    cover_components,
    enumerate_covers,
    lift_code,
    validate_voltages,
)
from .gf2 import BitMatrix, in_row_space, kernel_basis, rank
from .hgp import (
    ClassicalCode,
    hgp_presentation,
    hpc_naive_zlift,
    hypergraph_product,
    product_voltages,
    repetition_check_matrix,
)
from .intmat import IntMatrix, mod_reduce, multiply
from .presentation import (
    LiftPresentation,
    cellular_presentation,
    cone_presentation,
    quotient_abelianization_rank,
)
from .tanner import (
    SignedMultigraph,
    SpanningForest,
    TannerGraph,
    cycle_basis,
    induced_subgraph_z,
    signed_lifted_tanner,
    spanning_forest,
    tanner_graph,
)
from .zlift import (
    RefutationResult,
    ZLiftedCode,
    refute_support_preserving,
    support_preserving_witness,
    validate_zlift,
)

__version__ = "0.1.0"

__all__ = [
    "BettiDescriptor",
    "BitMatrix",
    "ClassicalCode",
    "CodeParams",
    "CssCode",
    "IntMatrix",
    "LiftPresentation",
    "LiftedCode",
    "MultCopyGraph",
    "PairedGraph",
    "RefutationResult",
    "SignedMultigraph",
    "SpanningForest",
    "TannerGraph",
    "VoltageAssignment",
    "ZLiftedCode",
    "betti_components",
    "cellular_presentation",
    "cone_presentation",
    "cover_components",
    "cycle_basis",
    "distance",
    "enumerate_covers",
    "hgp_presentation",
    "hpc_naive_zlift",
    "hypergraph_product",
    "in_row_space",
    "induced_subgraph_z",
    "kernel_basis",
    "lift_code",
    "mod_reduce",
    "multigraph_z",
    "multiply",
    "new_css",
    "pair_edges",
    "parameters",
    "product_voltages",
    "quotient_abelianization_rank",
    "rank",
    "refute_support_preserving",
    "repetition_check_matrix",
    "signed_lifted_tanner",
    "spanning_forest",
    "support_preserving_witness",
    "tanner_graph",
    "validate_voltages",
    "validate_zlift",
]
