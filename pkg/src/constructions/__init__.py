from .families import (
    FAMILIES,
    PaperGroup,
    build_abelian,
    build_case_i,
    build_case_ii,
    build_case_iii,
    build_family,
    build_negative,
    from_layered,
    load_paper_group,
    theta_automorphism,
)
from .refinement import full_refinement, refinement_series, weight_commutators

__all__ = [
    "FAMILIES",
    "PaperGroup",
    "build_abelian",
    "build_case_i",
    "build_case_ii",
    "build_case_iii",
    "build_family",
    "build_negative",
    "from_layered",
    "full_refinement",
    "load_paper_group",
    "refinement_series",
    "theta_automorphism",
    "weight_commutators",
]
