"""Randomized distance-layer cube representations of hypercubes.

Vertices of H_d are d-bit integers; position 1 of a binary string is bit 0.
"""

from .core import (
    canonical_orientation,
    diff_positions,
    hamming_distance,
    is_adjacent,
    nonadjacent_pairs,
    u_bit_count,
)
from .intervals import (
    ApexLayerRep,
    CubeRepresentation,
    UnitIntervalRep,
    Ix_adjacent,
    build_Ix,
    cube_representation,
    intersection_adjacent,
    rep_adjacent,
)
from .builder import (
    NonAdjacencyClass,
    SeedSet,
    VerificationReport,
    build_representation,
    check_property_P_classwise,
    check_property_P_pairwise,
    empirical_min_size,
    enumerate_classes,
    minimize_seed_set,
    sample_seed_set,
    separates,
)
from .analysis import (
    BoundReport,
    class_count,
    cmo_lower_bound,
    edge_prob_exact,
    edge_prob_monte_carlo,
    failure_bound,
    required_c,
    sqrt_bound_constant,
    worst_case_survival,
)
from .oracle import (
    ProperOrderRep,
    SmallGraph,
    certify_upper_bound,
    exact_cubicity,
    is_unit_interval,
    unit_interval_supergraphs,
)

__version__ = "0.1.0"
