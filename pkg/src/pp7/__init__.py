"""Degree-7 permutation polynomials over odd finite fields, up to linear transformations."""

from .equiv import (
    CosetReps,
    LinearMap,
    apply_linear,
    candidate_blocks,
    candidate_space,
    canonical,
    coset_reps,
    linearly_related,
    normalize,
)
from .exceptional import ExceptionalEntry, catalog, dickson7, is_exceptional
from .gf import FieldCtx, FieldElement, field_of_order, make_field
from .golden import golden_tables
from .hermite import HermiteReport, applicable_identities, hermite_full, identity_filter, p7_a1_relation
from .poly import NormalizedSeptic, Polynomial, is_pp_bruteforce, is_pp_valueset
from .search import ClassificationReport, PPClassRecord, classify, verify_paper

__all__ = [
    "ClassificationReport",
    "CosetReps",
    "ExceptionalEntry",
    "FieldCtx",
    "FieldElement",
    "HermiteReport",
    "LinearMap",
    "NormalizedSeptic",
    "PPClassRecord",
    "Polynomial",
    "applicable_identities",
    "apply_linear",
    "candidate_blocks",
    "candidate_space",
    "canonical",
    "catalog",
    "classify",
    "coset_reps",
    "dickson7",
    "field_of_order",
    "golden_tables",
    "hermite_full",
    "identity_filter",
    "is_exceptional",
    "is_pp_bruteforce",
    "is_pp_valueset",
    "linearly_related",
    "make_field",
    "normalize",
    "p7_a1_relation",
    "verify_paper",
]
