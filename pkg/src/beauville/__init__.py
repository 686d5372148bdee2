from .lifting import LiftVerdict, lift_check
from .search import NoneProof, SearchMode, SearchOutcome, SigmaClass, exhaustive_search, sigma_classes
from .structures import (BeauvilleCertificate, GenPair, PaperStructure, RegularityCriterion, check_beauville,
                         check_strongly_real, is_generating_pair, make_pair, paper_structure, real_conjugator,
                         recipe_congruences, regular_criterion, sigma)

__all__ = [
    "BeauvilleCertificate",
    "GenPair",
    "LiftVerdict",
    "NoneProof",
    "PaperStructure",
    "RegularityCriterion",
    "SearchMode",
    "SearchOutcome",
    "SigmaClass",
    "check_beauville",
    "check_strongly_real",
    "exhaustive_search",
    "is_generating_pair",
    "lift_check",
    "make_pair",
    "paper_structure",
    "real_conjugator",
    "recipe_congruences",
    "regular_criterion",
    "sigma",
    "sigma_classes",
]
