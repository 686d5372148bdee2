from .element_set import ElementSet
from .finite_group import FiniteGroup, enumerate_group
from .homomorphism import Homomorphism, hom_from_images
from .quotient import quotient_group
from .subgroups import (
    Closure,
    NormalSeries,
    agemo,
    derived_subgroup,
    frattini,
    is_invariant,
    is_normal,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    subgroup_closure,
)

__all__ = [
    "Closure",
    "ElementSet",
    "FiniteGroup",
    "Homomorphism",
    "NormalSeries",
    "agemo",
    "derived_subgroup",
    "enumerate_group",
    "frattini",
    "hom_from_images",
    "is_invariant",
    "is_normal",
    "lower_central_series",
    "nilpotency_class",
    "normal_closure",
    "quotient_group",
    "subgroup_closure",
]
