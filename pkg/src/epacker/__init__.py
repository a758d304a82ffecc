"""Certifying pack-or-cover solver for tree and forest minors."""

from .decomposition import (
    BoundedRegion,
    PathDecomposition,
    extract_bounded_region,
    pathwidth_exact,
    prefix_graph,
    validate_pd,
)
from .errors import CapacityError, InvariantViolation, ParseError, Report
from .graph import (
    Graph,
    boundary,
    connected_components,
    generate,
    induced_subgraph,
    parse_graph,
    remove_vertices,
    serialize_graph,
)
from .minors import Forest, MinorModel, Tree, find_forest_minor, find_tree_minor, validate_model
from .pathwidth_ep import helly_pack_or_stab, pathwidth_pack_or_cover, pw_member_oracle
from .solver import (
    Cover,
    Instance,
    Packing,
    SolverConfig,
    find_smallest_prefix,
    pack_or_cover_forest,
    pack_or_cover_tree,
    solve,
    verify_outcome,
)

__all__ = [
    "BoundedRegion", "CapacityError", "Cover", "Forest", "Graph", "Instance",
    "InvariantViolation", "MinorModel", "Packing", "ParseError", "PathDecomposition",
    "Report", "SolverConfig", "Tree", "boundary", "connected_components",
    "extract_bounded_region", "find_forest_minor", "find_smallest_prefix", "find_tree_minor",
    "generate", "helly_pack_or_stab", "induced_subgraph", "pack_or_cover_forest",
    "pack_or_cover_tree", "parse_graph", "pathwidth_exact", "pathwidth_pack_or_cover",
    "prefix_graph", "pw_member_oracle", "remove_vertices", "serialize_graph", "solve",
    "validate_model", "validate_pd", "verify_outcome",
]
