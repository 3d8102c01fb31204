"""Small covers over simple polytopes, projective bundles over them, and
their mod 2 cohomology."""

from __future__ import annotations

from ._kernels import BACKEND
from .classify import (
    RP2BundleClass,
    T2BundleClass,
    TrivialityReport,
    classify_rp2,
    classify_t2,
    is_cohomologically_trivial,
    k_of,
    ko_order,
    mod2_cohomology_P_gamma_tau,
    montgomery_verdict,
    same_rp2_class,
    t2_ring,
)
from .document import emit_document, parse_document
from .errors import SmallCoverError
from .fibresum import (
    IrreduciblePiece,
    LabeledPolygon,
    decompose,
    decomposition_tree,
    fibre_sum,
    find_split_pair,
    labeled_polygon,
    normalize_piece,
    random_labeled_polygon,
    recompose,
    split,
    weak_equivalent,
)
from .gf2 import BitMatrix, Gf2Poly, binom_mod2, det, rank, solve_left_multiplier
from .polytope import SimplePolytope, intersection_nonempty, make_polygon, make_simplex, minimal_nonfaces, product
from .projbundle import (
    LineBundleSum,
    ProjChar,
    SWClass,
    bott_tower,
    bundle_cohomology,
    line_bundle_sum,
    product_cohomology,
    standardize,
    stong_manifold,
    to_small_cover,
    total_sw,
    triviality_test,
)
from .rings import RingPresentation, graded_dims, reduces_to_zero, ring_from_strings, ring_isomorphic
from .smallcover import (
    CharFunction,
    SmallCoverModel,
    as_model,
    equivariant_cohomology,
    normalize,
    ordinary_cohomology,
    validate_char,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitMatrix",
    "CharFunction",
    "Gf2Poly",
    "IrreduciblePiece",
    "LabeledPolygon",
    "LineBundleSum",
    "ProjChar",
    "RP2BundleClass",
    "RingPresentation",
    "SWClass",
    "SimplePolytope",
    "SmallCoverError",
    "SmallCoverModel",
    "T2BundleClass",
    "TrivialityReport",
    "as_model",
    "binom_mod2",
    "bott_tower",
    "bundle_cohomology",
    "classify_rp2",
    "classify_t2",
    "decompose",
    "decomposition_tree",
    "det",
    "emit_document",
    "equivariant_cohomology",
    "fibre_sum",
    "find_split_pair",
    "graded_dims",
    "intersection_nonempty",
    "is_cohomologically_trivial",
    "k_of",
    "ko_order",
    "labeled_polygon",
    "line_bundle_sum",
    "make_polygon",
    "make_simplex",
    "minimal_nonfaces",
    "mod2_cohomology_P_gamma_tau",
    "montgomery_verdict",
    "normalize",
    "normalize_piece",
    "ordinary_cohomology",
    "parse_document",
    "product",
    "product_cohomology",
    "random_labeled_polygon",
    "rank",
    "recompose",
    "reduces_to_zero",
    "ring_from_strings",
    "ring_isomorphic",
    "same_rp2_class",
    "solve_left_multiplier",
    "split",
    "standardize",
    "stong_manifold",
    "t2_ring",
    "to_small_cover",
    "total_sw",
    "triviality_test",
    "validate_char",
    "weak_equivalent",
]
