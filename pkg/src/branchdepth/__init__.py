"""Branch-depth of connectivity functions, matroid depth parameters and
the restriction order on labelled matrices."""

__version__ = "0.1.0"

from .connectivity import (
    CAPS,
    CapExceeded,
    ConnectivityOracle,
    GroundSet,
    PreconditionError,
    restrict_oracle,
    verify_axioms,
    zero_components,
)
from .decomposition import Decomposition, branch_depth, branch_depth_exact, exists_kr, width
from .graph import Graph, cut_rank_oracle, edge_oracle, generate, local_complement, tree_depth
from .matroid import (
    Matroid,
    cd_depth,
    contraction_depth,
    cycle_matroid,
    deletion_depth,
    linear,
    uniform,
)
from .shrub import Shrubbery, rank_depth, shrubbery_from_decomposition, validate_shrubbery
from .wqo import LabeledMatrix, find_good_pair, is_restriction

__all__ = [
    "CAPS",
    "CapExceeded",
    "ConnectivityOracle",
    "Decomposition",
    "Graph",
    "GroundSet",
    "LabeledMatrix",
    "Matroid",
    "PreconditionError",
    "Shrubbery",
    "branch_depth",
    "branch_depth_exact",
    "cd_depth",
    "contraction_depth",
    "cut_rank_oracle",
    "cycle_matroid",
    "deletion_depth",
    "edge_oracle",
    "exists_kr",
    "find_good_pair",
    "generate",
    "is_restriction",
    "linear",
    "local_complement",
    "rank_depth",
    "restrict_oracle",
    "shrubbery_from_decomposition",
    "tree_depth",
    "uniform",
    "validate_shrubbery",
    "verify_axioms",
    "width",
    "zero_components",
]
