"""Quotients G/N with an induced pc presentation.

The pc generators of G map onto a polycyclic generating sequence of G/N.
With G_k the subgroup on g_k, ..., g_n, the relative order of g_k N is
|G_k N : G_{k+1} N|; generators with relative order 1 are dropped and the
rest keep their names. Tails are found by sifting coset representatives
down the chain.
"""
from __future__ import annotations

from .element_set import ElementSet
from .finite_group import FiniteGroup
from .homomorphism import Homomorphism
from .subgroups import is_normal
from ..pc.presentation import PcPresentation
from ..utils.errors import NotNormalError, ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("Quotient")


class CosetSifter:
    def __init__(self, group: FiniteGroup, normal: ElementSet):
        self.group = group
        self.normal = normal
        members = normal.members()
        label = [-1] * group.order
        count = 0
        for g in range(group.order):
            if label[g] < 0:
                for x in members:
                    label[group.mul(g, x)] = count
                count += 1
        self.label = label
        self.cosets = count
        # coset ids met by each prefix subgroup G_k, k = 0..n
        sizes = [group.strides[k] * group.m[k] for k in range(group.n)] + [1]
        self.levels = [set(label[:size]) for size in sizes]
        self.rel_orders = [len(self.levels[k]) // len(self.levels[k + 1]) for k in range(group.n)]
        self.kept = [k for k, r in enumerate(self.rel_orders) if r > 1]
        self._inverse_powers = {
            k: [group.power(group.generator(k), -e) for e in range(self.rel_orders[k])] for k in self.kept}

    def sift(self, g: int) -> tuple[int, ...]:
        """Exponents of gN over the kept generators"""
        exps = []
        for k in self.kept:
            below = self.levels[k + 1]
            for e, h in enumerate(self._inverse_powers[k]):
                u = self.group.mul(h, g)
                if self.label[u] in below:
                    exps.append(e)
                    g = u
                    break
            else:
                raise AssertionError(f"sifting failed at generator {k}")
        return tuple(exps)

    def word(self, g: int) -> tuple[tuple[int, int], ...]:
        return tuple((i, e) for i, e in enumerate(self.sift(g)) if e)


@timing_decorator(logger)
def quotient_group(group: FiniteGroup, normal: ElementSet, name: str | None = None,
                   check_normal: bool = True) -> tuple[FiniteGroup, Homomorphism]:
    """G/N with its projection; raises NotNormalError when N is not normal"""
    if check_normal and not is_normal(group, normal):
        raise NotNormalError(f"subgroup of size {normal.size} is not normal in {group.name}")
    sifter = CosetSifter(group, normal)
    kept = sifter.kept
    if not kept:
        raise ParameterError(f"quotient of {group.name} by itself is trivial")
    p = group.presentation
    power_tails = []
    for k in kept:
        power_tails.append(sifter.word(group.power(group.generator(k), sifter.rel_orders[k])))
    comm_items = []
    for b, j in enumerate(kept):
        for a, i in enumerate(kept[:b]):
            tail = sifter.word(group.comm(group.generator(j), group.generator(i)))
            if tail:
                comm_items.append(((b, a), tail))
    presentation = PcPresentation(
        name=name or f"{group.name}/N",
        names=tuple(p.names[k] for k in kept),
        rel_orders=tuple(sifter.rel_orders[k] for k in kept),
        power_tails=tuple(power_tails),
        comm_items=tuple(comm_items),
        weights=tuple(p.weights[k] for k in kept) if p.weights else None,
    )
    quotient = FiniteGroup(presentation)
    images = [quotient.index(sifter.sift(g)) for g in group.pc_generators]
    projection = Homomorphism(group, quotient, images, kernel=normal)
    logger.debug(f"{group.name} / N has order {quotient.order}")
    return quotient, projection

