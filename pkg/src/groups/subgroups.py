from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .element_set import ElementSet
from .finite_group import FiniteGroup
from ..utils.errors import ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("Subgroups")


class Closure:
    """Incremental subgroup closure: adding a generator extends the member list in place"""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.mask = np.zeros(group.order, dtype=bool)
        self.mask[group.identity] = True
        self.members = [group.identity]
        self.generators: list[int] = []

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask[idx])

    def add(self, g: int) -> bool:
        """Adjoin g; False when g was already a member"""
        if self.mask[g]:
            return False
        mul = self.group.mul
        mask = self.mask
        self.generators.append(g)
        frontier = []
        for x in self.members:
            y = mul(x, g)
            if not mask[y]:
                mask[y] = True
                frontier.append(y)
        gens = self.generators
        while frontier:
            self.members.extend(frontier)
            next_frontier = []
            for x in frontier:
                for h in gens:
                    y = mul(x, h)
                    if not mask[y]:
                        mask[y] = True
                        next_frontier.append(y)
            frontier = next_frontier
        return True

    def to_set(self, normal: bool = False, label: str = "") -> ElementSet:
        return ElementSet(self.group, self.mask.copy(), subgroup=True, normal=normal,
                          generators=self.generators, label=label)


def subgroup_closure(group: FiniteGroup, elements: Iterable[int], label: str = "") -> ElementSet:
    closure = Closure(group)
    for g in elements:
        closure.add(g)
    return closure.to_set(label=label)


def normal_closure(group: FiniteGroup, elements: Iterable[int], label: str = "") -> ElementSet:
    closure = Closure(group)
    pending = list(elements)
    while pending:
        g = pending.pop()
        if closure.add(g):
            pending.extend(group.conj(g, h) for h in group.pc_generators)
    # conjugates of generators by pc generators lie in the closure, so it is normal
    return closure.to_set(normal=True, label=label)


def is_normal(group: FiniteGroup, subset: ElementSet) -> bool:
    gens = subset.generators if subset.generators is not None else subset.members()
    return all(group.conj(g, h) in subset for g in gens for h in group.pc_generators)


def commutator_subgroup(group: FiniteGroup, a: ElementSet, b: ElementSet, label: str = "") -> ElementSet:
    """[A, B] for normal subgroups A, B given with generators"""
    return normal_closure(group, (group.comm(x, y) for x in _gens(a) for y in _gens(b)), label=label)


def _gens(subset: ElementSet) -> tuple[int, ...]:
    return subset.generators if subset.generators is not None else tuple(subset.members())


def derived_subgroup(group: FiniteGroup) -> ElementSet:
    cached = group.cache.get("derived")
    if cached is None:
        whole = ElementSet.whole(group)
        cached = group.cache["derived"] = commutator_subgroup(group, whole, whole, label="G'")
    return cached


def frattini(group: FiniteGroup) -> ElementSet:
    """Phi(G) = G' G^p for a p-group"""
    if group.prime is None:
        raise ParameterError(f"{group.name} is not a p-group")
    cached = group.cache.get("frattini")
    if cached is None:
        closure = Closure(group)
        for g in _gens(derived_subgroup(group)):
            closure.add(g)
        for g in group.pc_generators:
            closure.add(group.power(g, group.prime))
        cached = group.cache["frattini"] = closure.to_set(normal=True, label="Phi(G)")
    return cached


@timing_decorator(logger)
def agemo(group: FiniteGroup, i: int) -> ElementSet:
    """Subgroup generated by every p^i-th power"""
    if i < 0:
        raise ParameterError("agemo index must be non-negative")
    if group.prime is None:
        raise ParameterError(f"{group.name} is not a p-group")
    if i == 0:
        return ElementSet.whole(group, label="G")
    powers = np.arange(group.order)
    power_map = np.asarray(group.power_map)
    for _ in range(i):
        powers = power_map[powers]
    closure = Closure(group)
    for g in np.unique(powers).tolist():
        closure.add(g)
    return closure.to_set(normal=True, label=f"G^{group.prime}^{i}")


@dataclass
class NormalSeries:
    """A descending chain of normal subgroups with per-term annotations"""
    group: FiniteGroup
    terms: list[ElementSet]
    invariant: list[bool | None] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.invariant:
            self.invariant = [None] * len(self.terms)
        if not self.labels:
            self.labels = [t.label for t in self.terms]

    @property
    def orders(self) -> list[int]:
        return [t.size for t in self.terms]

    @property
    def indices(self) -> list[int]:
        """|K_i : K_{i+1}| for consecutive terms"""
        return [a.size // b.size for a, b in zip(self.terms, self.terms[1:])]

    def check(self) -> list[str]:
        """Problems with normality or strict descent, empty when the series is sound"""
        problems = []
        for k, term in enumerate(self.terms):
            if not is_normal(self.group, term):
                problems.append(f"term {k} ({self.labels[k]}) is not normal")
        for k, (a, b) in enumerate(zip(self.terms, self.terms[1:])):
            if not (b < a):
                problems.append(f"term {k + 1} does not strictly descend from term {k}")
        return problems

    def mark_invariant(self, automorphism: Callable[[int], int]) -> None:
        self.invariant = [is_invariant(t, automorphism) for t in self.terms]


def is_invariant(subset: ElementSet, automorphism: Callable[[int], int]) -> bool:
    return all(automorphism(g) in subset for g in _gens(subset))


@timing_decorator(logger)
def lower_central_series(group: FiniteGroup) -> NormalSeries:
    cached = group.cache.get("lower_central")
    if cached is not None:
        return cached
    whole = ElementSet.whole(group, label="gamma_1")
    terms = [whole]
    while not terms[-1].is_trivial():
        term = commutator_subgroup(group, terms[-1], whole, label=f"gamma_{len(terms) + 1}")
        if term.size == terms[-1].size:
            raise ParameterError(f"{group.name} is not nilpotent")
        terms.append(term)
    series = group.cache["lower_central"] = NormalSeries(group, terms)
    logger.debug(f"Lower central series of {group.name}: {series.orders}")
    return series


def nilpotency_class(group: FiniteGroup) -> int:
    return len(lower_central_series(group).terms) - 1
