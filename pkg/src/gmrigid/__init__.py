"""Exact invariants and profinite comparison for graph manifolds."""

from .canonical import canonical_tuple, is_homeomorphic_data
from .decide import (
    check_equivalence_verdict,
    decide,
    enumerate_equivalences,
    hempel_kappa_set,
    is_profinitely_rigid,
    is_right_angled,
    profinite_genus,
    scale_modulus,
    verify_witness_mod,
)
from .errors import (
    BadGroupTable,
    BudgetExceeded,
    DeterminantNotMinusOne,
    Disconnected,
    GammaZero,
    GmError,
    InvalidTree,
    NonCoprime,
    NonHyperbolicBase,
    ParseError,
    SlotReused,
)
from .fileformat import load_manifold, parse_manifold, save_manifold, serialize_manifold
from .grouplib import builtin_library, load_group, make_group, save_group
from .homcount import (
    DEFAULT_BUDGET,
    compare_spectra,
    count_homs,
    count_homs_manifold,
    hom_spectrum,
)
from .homology import (
    betti_one_rigidity_check,
    fibers_rationally_nontrivial,
    first_homology,
    presentation_matrix,
    smith_normal_form,
)
from .knots import (
    Cable,
    CableNeighbor,
    ProductNeighbor,
    Sum,
    TorusKnot,
    build_exterior,
    knot_invariant,
    leaf_total_slope,
    parse_knot,
    same_knot_group,
)
from .manifold import (
    GraphManifold,
    assemble,
    dehn_twist,
    flip_fiber_orientation,
    make_edge,
)
from .presentation import finite_presentation, normalize_presentation
from .seifert import Cone, SeifertPiece, make_piece

__all__ = [
    "BadGroupTable",
    "BudgetExceeded",
    "Cable",
    "CableNeighbor",
    "Cone",
    "DEFAULT_BUDGET",
    "DeterminantNotMinusOne",
    "Disconnected",
    "GammaZero",
    "GmError",
    "GraphManifold",
    "InvalidTree",
    "NonCoprime",
    "NonHyperbolicBase",
    "ParseError",
    "ProductNeighbor",
    "SeifertPiece",
    "SlotReused",
    "Sum",
    "TorusKnot",
    "assemble",
    "betti_one_rigidity_check",
    "build_exterior",
    "builtin_library",
    "canonical_tuple",
    "check_equivalence_verdict",
    "compare_spectra",
    "count_homs",
    "count_homs_manifold",
    "decide",
    "dehn_twist",
    "enumerate_equivalences",
    "fibers_rationally_nontrivial",
    "finite_presentation",
    "first_homology",
    "flip_fiber_orientation",
    "hempel_kappa_set",
    "hom_spectrum",
    "is_homeomorphic_data",
    "is_profinitely_rigid",
    "is_right_angled",
    "knot_invariant",
    "leaf_total_slope",
    "load_group",
    "load_manifold",
    "make_edge",
    "make_group",
    "make_piece",
    "normalize_presentation",
    "parse_knot",
    "parse_manifold",
    "presentation_matrix",
    "profinite_genus",
    "same_knot_group",
    "save_group",
    "save_manifold",
    "scale_modulus",
    "serialize_manifold",
    "smith_normal_form",
    "verify_witness_mod",
]
