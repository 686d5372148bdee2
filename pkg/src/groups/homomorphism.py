from __future__ import annotations

from collections import deque
from typing import Sequence

from .element_set import ElementSet
from .finite_group import FiniteGroup
from ..pc.expressions import Gen, evaluate
from ..utils.errors import NotSurjectiveError, NotWellDefinedError, ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("Homomorphism")


class Homomorphism:
    """A map determined by the images of the source's pc generators.

    An element with normal form g_1^{e_1} ... g_n^{e_n} maps to the product of
    the image powers in the same order.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, pc_images: Sequence[int],
                 kernel: ElementSet | None = None):
        self.source = source
        self.target = target
        self.pc_images = tuple(pc_images)
        self.kernel = kernel
        self._powers = [
            [target.power(img, e) for e in range(m)] for img, m in zip(self.pc_images, source.m)]
        self._full_map: list[int] | None = None

    def __call__(self, a: int) -> int:
        if self._full_map is not None:
            return self._full_map[a]
        result = self.target.identity
        for powers, e in zip(self._powers, self.source.vector(a)):
            if e:
                result = self.target.mul(result, powers[e])
        return result

    @property
    @timing_decorator(logger)
    def full_map(self) -> list[int]:
        """Images of every element, one multiplication each: phi(e' g_l) = phi(e') phi(g_l)"""
        if self._full_map is None:
            last = self.source.last_letter
            strides = self.source.strides
            images = [self.target.identity] * self.source.order
            for a in range(1, self.source.order):
                l = last[a]
                images[a] = self.target.mul(images[a - strides[l]], self.pc_images[l])
            self._full_map = images
        return self._full_map

    def image_size(self) -> int:
        return len(set(self.full_map))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.image_size() == self.target.order

    @property
    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_bijective()

    def kernel_set(self) -> ElementSet:
        if self.kernel is None:
            identity = self.target.identity
            self.kernel = ElementSet.from_indices(
                self.source, [a for a, img in enumerate(self.full_map) if img == identity],
                normal=True, label="ker")
        return self.kernel

    def check_multiplicative(self, pairs: Sequence[tuple[int, int]] | None = None) -> bool:
        """phi(ab) == phi(a) phi(b), over all pairs unless a sample is given"""
        phi = self.full_map
        src, tgt = self.source, self.target
        if pairs is None:
            pairs = [(a, b) for a in range(src.order) for b in range(src.order)]
        return all(phi[src.mul(a, b)] == tgt.mul(phi[a], phi[b]) for a, b in pairs)


def _pc_images_by_search(source: FiniteGroup, target: FiniteGroup, gens: Sequence[int],
                         images: Sequence[int], missing: set[int]) -> dict[int, int]:
    """Walk the Cayley graph of <gens> tracking images until every missing pc generator is reached"""
    wanted = {source.generator(i): i for i in missing}
    found: dict[int, int] = {}
    seen = {source.identity: target.identity}
    queue = deque([source.identity])
    while queue and len(found) < len(wanted):
        x = queue.popleft()
        for g, img in zip(gens, images):
            y = source.mul(x, g)
            if y not in seen:
                seen[y] = target.mul(seen[x], img)
                if y in wanted:
                    found[wanted[y]] = seen[y]
                queue.append(y)
    if len(found) < len(wanted):
        raise ParameterError(f"the given elements do not generate {source.name}")
    return found


@timing_decorator(logger)
def hom_from_images(source: FiniteGroup, target: FiniteGroup, gens: Sequence[int], images: Sequence[int],
                    require_surjective: bool = True) -> Homomorphism:
    """The homomorphism sending gens[k] to images[k], after checking every defining relation of the source"""
    if len(gens) != len(images):
        raise ParameterError("generators and images differ in number")
    n = source.n
    pc: list[int | None] = [None] * n
    unit = {source.generator(i): i for i in range(n)}
    for g, img in zip(gens, images):
        if g in unit:
            pc[unit[g]] = img
    definitions = source.presentation.definitions
    for k in sorted(definitions):
        if pc[k] is None:
            expr = definitions[k]
            # definitions only refer to earlier generators, which are assigned by now
            try:
                pc[k] = evaluate(expr, target, lambda leaf: _known(pc, leaf))
            except LookupError:
                continue
    missing = {i for i in range(n) if pc[i] is None}
    if missing:
        for i, img in _pc_images_by_search(source, target, gens, images, missing).items():
            pc[i] = img

    for label, lhs, tail in source.presentation.relations():
        left = evaluate(lhs, target, lambda leaf: pc[leaf.index])
        right = target.identity
        for i, e in tail:
            right = target.mul(right, target.power(pc[i], e))
        if left != right:
            raise NotWellDefinedError(label)

    hom = Homomorphism(source, target, pc)
    for k, (g, img) in enumerate(zip(gens, images)):
        if hom(g) != img:
            raise NotWellDefinedError(f"image of generator {k + 1}")
    if require_surjective:
        size = hom.image_size()
        if size != target.order:
            raise NotSurjectiveError(size, target.order)
    logger.debug(f"Homomorphism {source.name} -> {target.name} checked"
                 f"{' (automorphism)' if hom.is_automorphism else ''}")
    return hom


def _known(pc: list[int | None], leaf) -> int:
    if not isinstance(leaf, Gen) or pc[leaf.index] is None:
        raise LookupError(leaf)
    return pc[leaf.index]
