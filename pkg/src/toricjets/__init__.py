"""Jet scheme component classification for cyclic quotient surface
singularities.

A coprime pair (p, q) with 0 < p < q determines an affine toric surface
with a single singular point.  For each jet level m this package computes
the irreducible components of the jet fiber over that point: their labels,
the identifications among labels, codimensions, and the closed-form count,
and it cross-checks the classification against exact witness arcs and an
exhaustive finite-field enumeration.
"""

from .components import (
    ComponentClass,
    ComponentReport,
    S1Count,
    codimension,
    component_report,
    count_closed_form,
    dimension,
    enumerate_classes,
    index_of_speciality,
    m_cap,
    report_as_dict,
    s1_count,
    valid_labels,
)
from .equations import BinomialEquation, generators, grading_check
from .errors import (
    CoprimalityError,
    EmbeddingDimensionError,
    GuardExceededError,
    InputRangeError,
    NonMemberError,
    ToricJetsError,
)
from .jets import (
    ABOVE_M,
    RATIONALS,
    CoefficientField,
    TruncatedJet,
    contact_profile,
    coordinate_order,
    evaluate,
    is_member,
    monomial_arc,
    prime_field,
    truncate,
)
from .lattice import (
    ConePair,
    ContinuedFraction,
    DualBasis,
    ToricSurface,
    cone_contains,
    contact_vector,
    dual_hilbert_basis,
    dual_hilbert_basis_bruteforce,
    exceptional_count_dual_cf,
    exceptional_count_hull,
    hj_evaluate,
    hj_expand,
)
from .oracle import (
    DEFAULT_GUARD,
    CoverageReport,
    FiberPoint,
    OracleConfig,
    StratumStats,
    check_order_propagation,
    coverage_spot_check,
    enumerate_fiber,
    required_budget,
    stratum_counts,
)

__version__ = "0.1.0"

__all__ = [
    "ABOVE_M",
    "BinomialEquation",
    "CoefficientField",
    "ComponentClass",
    "ComponentReport",
    "ConePair",
    "ContinuedFraction",
    "CoprimalityError",
    "CoverageReport",
    "DEFAULT_GUARD",
    "DualBasis",
    "EmbeddingDimensionError",
    "FiberPoint",
    "GuardExceededError",
    "InputRangeError",
    "NonMemberError",
    "OracleConfig",
    "RATIONALS",
    "S1Count",
    "StratumStats",
    "ToricJetsError",
    "ToricSurface",
    "TruncatedJet",
    "check_order_propagation",
    "codimension",
    "component_report",
    "cone_contains",
    "contact_profile",
    "contact_vector",
    "coordinate_order",
    "count_closed_form",
    "coverage_spot_check",
    "dimension",
    "dual_hilbert_basis",
    "dual_hilbert_basis_bruteforce",
    "enumerate_classes",
    "enumerate_fiber",
    "evaluate",
    "exceptional_count_dual_cf",
    "exceptional_count_hull",
    "generators",
    "grading_check",
    "hj_evaluate",
    "hj_expand",
    "index_of_speciality",
    "is_member",
    "m_cap",
    "monomial_arc",
    "prime_field",
    "report_as_dict",
    "required_budget",
    "s1_count",
    "stratum_counts",
    "truncate",
    "valid_labels",
]
