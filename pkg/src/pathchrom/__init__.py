"""Path-chromatic number toolkit: the recursive construction with chi = r+k,
its colourings, exact solvers for chi and r, and verification harnesses."""
from .canonical_colouring import (
    audit_path_colouring,
    canonical_chi_colouring,
    colour_path_subgraph,
    fourcolour_near_forest,
)
from .construction import (
    LabeledConstruction,
    build_aux,
    build_base,
    build_G,
    build_H,
    build_H_minus,
    build_H_plus,
    check_role_consistency,
    count_G,
)
from .graph_core import Colouring, Graph, GraphBuilder, PathWitness, induced_subgraph, is_proper
from .path_chromatic import Mode, RResult, r_exact_paths, r_exact_subsets, r_sampled_lower
from .report import Report, Status

__version__ = "0.1.0"
