"""Extremal K4-free triple systems: constructions, invariants, classification."""

from .triplesystem import TripleSystem, triple_rank, triples_by_rank
from .construction import (
    BLUE,
    Color,
    ColorSet,
    Layout,
    PrefixCounts,
    RED,
    check_coloring_conditions,
    check_construction4,
    color_sets,
    complex_from_layout,
    conjectured_max,
    construction2_colorings,
    enumerate_construction4,
    exceptional_complex7,
    is_exceptional_construction,
    missing_row_formula,
    parse_layout,
    prefix_counts,
    render_layout,
    turan_original,
)
from .invariants import (
    ColumnFoot,
    ColumnLeg,
    EmptyCore,
    EmptyUnion,
    InvariantRecord,
    column_feet,
    column_legs,
    empty_clusters,
    empty_cores,
    empty_unions,
    fingerprint,
    indistinguishable,
    predict_column_feet,
    predict_column_legs,
    predict_empty_clusters,
    predict_empty_cores,
    predict_empty_unions,
)
from .isomorphism import CanonicalForm, are_isomorphic, canonical_form, iso_classes
from .search import (
    BudgetExceeded,
    CoverInstance,
    SearchReport,
    build_cover_instance,
    classify_extremal,
    min_missing_cover,
    ratio_monotonicity_check,
)

__all__ = [
    "TripleSystem",
    "triple_rank",
    "triples_by_rank",
    "Color",
    "RED",
    "BLUE",
    "Layout",
    "ColorSet",
    "PrefixCounts",
    "check_coloring_conditions",
    "check_construction4",
    "color_sets",
    "complex_from_layout",
    "conjectured_max",
    "construction2_colorings",
    "enumerate_construction4",
    "exceptional_complex7",
    "is_exceptional_construction",
    "missing_row_formula",
    "parse_layout",
    "prefix_counts",
    "render_layout",
    "turan_original",
    "EmptyCore",
    "EmptyUnion",
    "ColumnLeg",
    "ColumnFoot",
    "InvariantRecord",
    "empty_clusters",
    "empty_cores",
    "empty_unions",
    "column_legs",
    "column_feet",
    "fingerprint",
    "indistinguishable",
    "predict_empty_clusters",
    "predict_empty_cores",
    "predict_empty_unions",
    "predict_column_legs",
    "predict_column_feet",
    "CanonicalForm",
    "canonical_form",
    "are_isomorphic",
    "iso_classes",
    "CoverInstance",
    "SearchReport",
    "BudgetExceeded",
    "build_cover_instance",
    "min_missing_cover",
    "classify_extremal",
    "ratio_monotonicity_check",
]
