"""Filtered instanton chain data of Brieskorn spheres and an embedding
obstruction for homology S^3 x S^1 targets."""

from .cs_q import ExplicitCovers, HomotopyS3xS1, ProductYxS1, QValue, cs_pair, q_l, q_tilde
from .filtered_complex import (
    AbelianGroup,
    CoChain,
    FilteredComplex,
    Generator,
    admissible_levels,
    cohomology,
    is_coboundary,
    restrict,
    smith_normal_form,
)
from .levels import INF, format_level, parse_level
from .obstruction import (
    AssumptionSet,
    ExplicitCounts,
    NonvanishingAssumed,
    admissible_window,
    certify_theta_nonvanishing,
    count_l_y,
    embedding_verdict,
)
from .seifert_flat import (
    FlatConnection,
    SeifertData,
    build_filtered_generators,
    cs_invariant,
    enumerate_flat_connections,
    floer_grading,
    validate_seifert,
)

__all__ = [
    "AbelianGroup", "AssumptionSet", "CoChain", "ExplicitCounts", "ExplicitCovers",
    "FilteredComplex", "FlatConnection", "Generator", "HomotopyS3xS1", "INF",
    "NonvanishingAssumed", "ProductYxS1", "QValue", "SeifertData", "admissible_levels",
    "admissible_window", "build_filtered_generators", "certify_theta_nonvanishing",
    "cohomology", "count_l_y", "cs_invariant", "cs_pair", "embedding_verdict",
    "enumerate_flat_connections", "floer_grading", "format_level", "is_coboundary",
    "parse_level", "q_l", "q_tilde", "restrict", "smith_normal_form", "validate_seifert",
]
