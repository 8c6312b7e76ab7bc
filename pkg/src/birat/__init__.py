"""Exact divisor calculus on blow-up resolutions of plane polynomial automorphisms.

The pipeline: validate an automorphism of the affine plane together with its
inverse, resolve the base points of both induced projective maps by iterated
blow-ups over the line at infinity, build the intersection lattice of the
resulting surface, and evaluate the cone indices (ample bound, effective
bracket) together with the polyhedrality verdict for the effective cone.
"""

from .automap import (
    AffineAutomorphism,
    DynamicalDegreeEstimate,
    InfinityPoint,
    ProjectiveMapLift,
    automorphism_from_text,
    check_infinity_collapse,
    compose_automorphisms,
    degree_sequence,
    dynamical_degree_estimate,
    henon_builder,
    indeterminacy_of,
    indeterminacy_on_infinity,
    is_regular,
    new_automorphism,
    projective_lift,
    transposed_henon_builder,
)
from .blowup import (
    Chart,
    ExceptionalRecord,
    ResolutionTower,
    TowerPoint,
    canonical_resolution,
    lift_into_chart,
)
from .picard import (
    DivisorClass,
    IndexReport,
    IntersectionLattice,
    ResolutionInvariants,
    ample_index_upper_bound,
    build_lattice,
    canonical_class,
    classify_effective_cone,
    dapv_region,
    effective_index_bracket,
    index_class,
    negative_curves,
    pullback_classes,
    verify_identities,
)
from .polyalg import MINUS_INFINITY, PolyMap, Polynomial, Scalar, parse_poly

__all__ = [
    "AffineAutomorphism",
    "Chart",
    "DivisorClass",
    "DynamicalDegreeEstimate",
    "ExceptionalRecord",
    "IndexReport",
    "InfinityPoint",
    "IntersectionLattice",
    "MINUS_INFINITY",
    "PolyMap",
    "Polynomial",
    "ProjectiveMapLift",
    "ResolutionInvariants",
    "ResolutionTower",
    "Scalar",
    "TowerPoint",
    "ample_index_upper_bound",
    "automorphism_from_text",
    "build_lattice",
    "canonical_class",
    "canonical_resolution",
    "check_infinity_collapse",
    "classify_effective_cone",
    "compose_automorphisms",
    "dapv_region",
    "degree_sequence",
    "dynamical_degree_estimate",
    "effective_index_bracket",
    "henon_builder",
    "indeterminacy_of",
    "indeterminacy_on_infinity",
    "index_class",
    "is_regular",
    "lift_into_chart",
    "negative_curves",
    "new_automorphism",
    "parse_poly",
    "projective_lift",
    "pullback_classes",
    "transposed_henon_builder",
    "verify_identities",
]
