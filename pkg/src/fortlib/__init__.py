"""Forts, zero forcing and related parameters, with hypercube tooling."""

__version__ = "0.1.0"

from .bits import VertexSet, from_members, members
from .errors import (
    ConsistencyError,
    FortlibError,
    GraphError,
    NotZeroForcingError,
    PreconditionError,
    ResourceLimitError,
)
from .forcing import ForcingTrace, closure, forcing_step, is_stalled, is_zero_forcing_set, propagation_time
from .forts import (
    FortCensus,
    ViolationReport,
    enumerate_forts_of_size,
    enumerate_minimal_forts,
    failed_zf_number,
    fort_violations,
    is_fort,
    is_minimal_fort,
    minimum_fort,
)
from .graph import (
    Graph,
    NotBipartiteError,
    bipartition,
    build_from_edge_list,
    build_hypercube,
    cartesian_product,
    closed_neighborhood,
    count_shortest_paths,
    distance,
    neighborhood,
)
from .lp import CoveringLp, LpSolution, fractional_zf, solve_covering_lp
from .search import (
    ParameterReport,
    compute_parameters,
    domination_number,
    enumerate_minimum_zfs,
    fort_number,
    min_zero_forcing_number,
    open_packing_number,
    pt_spectrum,
    total_domination_number,
)
from .symmetry import SignedPermutation, are_automorphic, canonical_form, classify_orbits
from .constructions import ConstructionResult, bipartite_parity_fort, lift_zfs, product_fort
