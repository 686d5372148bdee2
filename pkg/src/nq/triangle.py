"""Nilpotent quotients of the triangle groups T = <a, b | a^q = b^q = (ab)^r = 1>.

Each step takes a consistent presentation of T/gamma_{c+1}(T) and computes
T/gamma_{c+2}(T) as the largest central extension that is still a quotient of
T: every relation gets a free central tail, consistency and the three
relators cut the tails down, and the new layer is the part of the tail group
reached by the lifted relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from sympy import isprime

from .smith import Diagonalization, kernel_basis
from .tails import TailArithmetic
from ..pc.collector import Collector, consistency_check
from ..pc.expressions import Expr, Inv, Mul, Pow, Sym, evaluate, word_expr
from ..pc.pcp_format import PcDocument
from ..pc.presentation import PcPresentation, Word, prime_of_order
from ..utils.config import NQ_SETTINGS
from ..utils.errors import CapExceededError, InconsistentPresentationError, ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("NilpotentQuotient")


@dataclass(frozen=True)
class TriangleParams:
    p: int
    k: int
    r: int | None = None

    def __post_init__(self):
        if not isprime(self.p):
            raise ParameterError(f"p = {self.p} is not prime")
        if self.k < 1:
            raise ParameterError("k must be at least 1")
        if self.q <= 2:
            raise ParameterError(f"q = {self.q} must exceed 2")
        if self.r is None:
            object.__setattr__(self, "r", 3 * self.q if self.p == 3 else self.q)
        if prime_of_order(self.r) != self.p or self.r < self.q:
            raise ParameterError(f"r = {self.r} must be a power of {self.p} no smaller than q = {self.q}")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def label(self) -> str:
        return f"T({self.q},{self.q},{self.r})"

    def relators(self) -> list[tuple[str, Expr]]:
        a, b = Sym("a"), Sym("b")
        return [
            (f"a^{self.q}", Pow(a, self.q)),
            (f"b^{self.q}", Pow(b, self.q)),
            (f"(ab)^{self.r}", Pow(Mul((a, b)), self.r)),
        ]


@dataclass(frozen=True)
class LayeredPresentation:
    presentation: PcPresentation
    params: TriangleParams
    nilpotency_class: int
    images: Mapping[str, Word] = field(default_factory=lambda: {"a": ((0, 1),), "b": ((1, 1),)})
    stabilized: bool = False

    @property
    def weights(self) -> tuple[int, ...]:
        return self.presentation.weights

    @property
    def order(self) -> int:
        return self.presentation.order

    def layer(self, weight: int) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w == weight]

    def document(self) -> PcDocument:
        return PcDocument(self.presentation, images=dict(self.images))


def initial_class_quotient(tp: TriangleParams) -> LayeredPresentation:
    """The abelianization C_q x C_q with a, b mapped to the two generators"""
    q = tp.q
    presentation = PcPresentation(
        name=f"{tp.label}_c1",
        names=("a", "b"),
        rel_orders=(q, q),
        power_tails=((), ()),
        weights=(1, 1),
    )
    return LayeredPresentation(presentation, tp, 1)


def _relation_expr(lhs: Expr, tail: Word) -> Expr:
    """lhs * tail^-1, trivial exactly when the relation holds"""
    return Mul((lhs, Inv(word_expr(tail))))


@timing_decorator(logger)
def extend_class(lp: LayeredPresentation, tp: TriangleParams | None = None) -> LayeredPresentation:
    """The quotient one class deeper; flagged stabilized when the new layer is trivial"""
    tp = tp or lp.params
    if lp.stabilized:
        return lp
    P = lp.presentation
    n = P.length
    c = lp.nilpotency_class
    collector = Collector(P)
    arith = TailArithmetic(collector)
    size = arith.size

    lifts: list = []
    for k in range(n):
        expr = P.definitions.get(k)
        lifts.append(arith.unit(k) if expr is None else evaluate(expr, arith, lambda g: lifts[g.index]))
        if lifts[k][0] != collector.unit(k):
            raise AssertionError(f"definition of {P.names[k]} does not evaluate to it")

    def resolve(leaf):
        return lifts[leaf.index]

    relations = list(P.relations())
    values = []
    for label, lhs, tail in relations:
        left = evaluate(lhs, arith, resolve)
        right = evaluate(word_expr(tail), arith, resolve)
        if left[0] != right[0]:
            raise AssertionError(f"relation {label} fails in the base presentation")
        values.append([a - b for a, b in zip(left[1], right[1])])

    images = {name: evaluate(word_expr(word), arith, resolve) for name, word in lp.images.items()}
    rows = arith.consistency_rows()
    for label, relator in tp.relators():
        value = evaluate(relator, arith, lambda leaf: images[leaf.name])
        if any(value[0]):
            raise AssertionError(f"relator {label} fails in the base presentation")
        rows.append(list(value[1]))

    tails = Diagonalization(rows, size).run()
    torsion = [j for j, d in enumerate(tails.diagonal) if d > 1]
    free = [j for j, d in enumerate(tails.diagonal) if d == 0]
    coords = []
    for label_value, value in zip(relations, values):
        y = tails.coordinates(value)
        if any(y[j] for j in free):
            raise AssertionError(f"relation {label_value[0]} has infinite order in the new layer")
        coords.append([y[j] for j in torsion])
    moduli = [tails.diagonal[j] for j in torsion]

    layer = Diagonalization(kernel_basis(coords, moduli), size).run() if torsion else None
    new = [j for j, d in enumerate(layer.diagonal) if d > 1] if layer else []
    if not new:
        logger.info(f"{tp.label}: layer {c + 1} is trivial, quotient stabilized at order {P.order}")
        return LayeredPresentation(P, tp, c, lp.images, stabilized=True)
    if any(d == 0 for d in layer.diagonal):
        raise AssertionError("new layer is not finite")
    orders = [layer.diagonal[j] for j in new]
    for d in orders:
        if prime_of_order(d) != tp.p:
            raise AssertionError(f"layer factor {d} is not a power of {tp.p}")
    order = P.order
    for d in orders:
        order *= d
    if order > NQ_SETTINGS["MAX_ORDER"]:
        raise CapExceededError(f"order of {tp.label} class {c + 1} quotient", order, NQ_SETTINGS["MAX_ORDER"])

    def layer_word(rel: int) -> Word:
        return tuple((n + idx, layer.Q[rel][j] % d) for idx, (j, d) in enumerate(zip(new, orders))
                     if layer.Q[rel][j] % d)

    power_tails = tuple(P.power_tails[i] + layer_word(i) for i in range(n)) + ((),) * len(new)
    comm_items = []
    for j in range(n):
        for i in range(j):
            tail = P.comm_tail(j, i) + layer_word(collector.comm_id[j][i])
            if tail:
                comm_items.append(((j, i), tail))

    rel_exprs = [_relation_expr(lhs, tail) for _, lhs, tail in relations]
    definitions = dict(P.definitions)
    for idx, j in enumerate(new):
        factors = tuple(Pow(rel_exprs[l], coef) for l, coef in enumerate(layer.Q_inv[j]) if coef)
        definitions[n + idx] = Mul(factors)

    presentation = PcPresentation(
        name=f"{tp.label}_c{c + 1}",
        names=P.names + tuple(f"w{c + 1}_{idx + 1}" for idx in range(len(new))),
        rel_orders=P.rel_orders + tuple(orders),
        power_tails=power_tails,
        comm_items=tuple(comm_items),
        weights=P.weights + (c + 1,) * len(new),
        definitions=definitions,
    )
    violation = consistency_check(presentation)
    if violation is not None:
        raise InconsistentPresentationError(violation)
    logger.info(f"{tp.label}: class {c + 1} layer {orders}, order {presentation.order}")
    return LayeredPresentation(presentation, tp, c + 1, lp.images)


def triangle_quotient(tp: TriangleParams, class_bound: int | None = None) -> LayeredPresentation:
    """T / gamma_{class_bound + 1}(T), or the whole of T if the series stabilizes earlier"""
    class_bound = NQ_SETTINGS["CLASS_BOUND"] if class_bound is None else class_bound
    if not 1 <= class_bound <= NQ_SETTINGS["MAX_CLASS"]:
        raise ParameterError(f"class bound {class_bound} outside 1..{NQ_SETTINGS['MAX_CLASS']}")
    lp = initial_class_quotient(tp)
    while lp.nilpotency_class < class_bound and not lp.stabilized:
        lp = extend_class(lp, tp)
    return lp


def image_elements(lp: LayeredPresentation, group) -> dict[str, int]:
    """Images of a and b as element indices of an enumerated quotient"""
    return {name: group.element(word) for name, word in lp.images.items()}


__all__ = [
    "LayeredPresentation",
    "TriangleParams",
    "extend_class",
    "image_elements",
    "initial_class_quotient",
    "triangle_quotient",
]
