"""Exact tools for tight cycles, matchings, compressions and regular slices
in uniform hypergraphs."""

from .core import (
    Complex,
    GroundPartition,
    KGraph,
    LevelledHypergraph,
    complex_from_levels,
    degree,
    down_closure,
    level_counts,
    local_lym_margin,
    partite_restrict,
    supported_sets,
)
from .tight import (
    TightWalk,
    concatenate,
    min_tight_walk,
    plan_cycle_length,
    reverse_to_Ws,
    search_tight,
    tight_components,
    verify_tight,
)
from .matchings import (
    FractionalMatching,
    Matching,
    check_farkas_hypothesis,
    is_excellent,
    matching_number,
    max_fractional_matching,
    partite_connected_matching,
)
from .compression import (
    compress_ij,
    densest_component,
    fully_compress,
    prune_low_degree,
    ratio_matching,
)
from .regularity import RegularityParams, regularity_falsify, relative_density
from .slices import (
    DensityVector,
    PartitionFamily,
    Slice,
    enumerate_slices,
    generated_from_check,
    random_refinement,
    sample_slice,
    slice_probability,
    subset_density_test,
)
from .reduced import (
    WeightedReducedGraph,
    d_reduced,
    h_density,
    reduced_entropy,
    rel_degree,
    rooted_density,
    slice_quality_report,
    weighted_reduced,
)
from .generators import construct, random_kgraph, tightness_complex
from .khg import format_khg, parse_khg
from .report import write_report

__version__ = "0.1.0"
