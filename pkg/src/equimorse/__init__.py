"""Equivariant algebraic Morse reduction of free chain complexes.

Given a finitely generated free chain complex with a labeled basis, a finite
group permuting that basis by chain maps, and a group-stable acyclic matching
with invertible weights, this package computes the Morse complex, the split
acyclic summand, and an explicit equivariant isomorphism between the original
complex and their direct sum, with an independent Smith-normal-form homology
oracle for cross-checking.
"""

from .actions import (
    GroupAction,
    Orbit,
    close_generators,
    restrict_action,
    trivial_action,
    verify_g_map,
)
from .chains import (
    BasisElement,
    Chain,
    ChainComplex,
    GradedMap,
    apply_automorphism,
    check_complex,
    direct_sum,
    direct_sum_many,
    invert_matrix,
    span_subcomplex,
)
from .errors import (
    AcyclicityError,
    ClosureOverflowError,
    DegreeMismatchError,
    EquimorseError,
    GeneratorError,
    MatchingValidationError,
    NotClosedUnderBoundaryError,
    RingMismatchError,
    SingularMatrixError,
    UnsupportedCoefficientsError,
)
from .homology import (
    HomologyProfile,
    boundary_matrix,
    compare,
    homology,
    smith_normal_form,
)
from .io import (
    SimplicialInput,
    complex_from_json,
    complex_to_json,
    group_from_json,
    group_to_json,
    ingest_simplicial,
    matching_from_json,
    matching_to_json,
    reduction_to_json,
)
from .matchings import (
    Matching,
    ValidationReport,
    greedy_equivariant_match,
    pair_orbit,
    pair_orbits,
    small_fiber_map,
    validate,
)
from .posets import (
    CoverGraph,
    QuotientPoset,
    build_cover_graph,
    check_orbit_incomparability,
    cover_graph_dot,
    find_alternating_cycle,
    quotient_dot,
    quotient_poset,
)
from .reduction import (
    AcyclicPiece,
    ReductionResult,
    ReductionStep,
    contraction_homotopy,
    eliminate_orbit,
    reduce,
    select_minimal_orbit,
    verify_weight_preservation,
)
from .rings import QQ, Ring, RingElem, ZZ, Zmod, add, mul, neg, try_invert

__version__ = "0.1.0"

__all__ = [
    "AcyclicPiece",
    "AcyclicityError",
    "BasisElement",
    "Chain",
    "ChainComplex",
    "ClosureOverflowError",
    "CoverGraph",
    "DegreeMismatchError",
    "EquimorseError",
    "GeneratorError",
    "GradedMap",
    "GroupAction",
    "HomologyProfile",
    "Matching",
    "MatchingValidationError",
    "NotClosedUnderBoundaryError",
    "Orbit",
    "QQ",
    "QuotientPoset",
    "ReductionResult",
    "ReductionStep",
    "Ring",
    "RingElem",
    "RingMismatchError",
    "SimplicialInput",
    "SingularMatrixError",
    "UnsupportedCoefficientsError",
    "ValidationReport",
    "ZZ",
    "Zmod",
    "add",
    "apply_automorphism",
    "boundary_matrix",
    "build_cover_graph",
    "check_complex",
    "check_orbit_incomparability",
    "close_generators",
    "compare",
    "complex_from_json",
    "complex_to_json",
    "contraction_homotopy",
    "cover_graph_dot",
    "direct_sum",
    "direct_sum_many",
    "eliminate_orbit",
    "find_alternating_cycle",
    "greedy_equivariant_match",
    "group_from_json",
    "group_to_json",
    "homology",
    "ingest_simplicial",
    "invert_matrix",
    "matching_from_json",
    "matching_to_json",
    "mul",
    "neg",
    "pair_orbit",
    "pair_orbits",
    "quotient_dot",
    "quotient_poset",
    "reduce",
    "reduction_to_json",
    "restrict_action",
    "select_minimal_orbit",
    "small_fiber_map",
    "span_subcomplex",
    "smith_normal_form",
    "trivial_action",
    "try_invert",
    "validate",
    "verify_g_map",
    "verify_weight_preservation",
]
