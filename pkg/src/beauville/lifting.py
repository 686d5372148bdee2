"""Lifting a Beauville structure from a quotient G/N back to G.

If the images of two generating pairs form a Beauville structure of G/N and
o(g) = o(gN) for every g in the first triple, then the pairs form a
Beauville structure of G itself.
"""
from __future__ import annotations

from dataclasses import dataclass

from .structures import GenPair, check_beauville, make_pair
from ..groups.element_set import ElementSet
from ..groups.homomorphism import Homomorphism
from ..groups.quotient import quotient_group
from ..utils.config import SEARCH_SETTINGS
from ..utils.errors import NotNormalError, ParameterError
from ..utils.logger import default_logger

logger = default_logger.getChild("Lifting")


@dataclass
class LiftVerdict:
    lifts: bool
    quotient_beauville: bool
    orders_preserved: bool
    quotient_order: int
    direct: bool | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.lifts


def lift_check(normal: ElementSet, pair1: GenPair, pair2: GenPair,
               projection: Homomorphism | None = None) -> LiftVerdict:
    """Lift verdict for the pairs through G -> G/N, cross-checked directly on G when G is small enough"""
    G = normal.group
    if normal.size == G.order:
        return LiftVerdict(False, False, False, 1, reason="trivial quotient")
    if projection is None:
        try:
            _, projection = quotient_group(G, normal)
        except (NotNormalError, ParameterError) as exc:
            return LiftVerdict(False, False, False, G.order // normal.size, reason=str(exc))
    Q = projection.target
    q1 = make_pair(Q, projection(pair1.x), projection(pair1.y))
    q2 = make_pair(Q, projection(pair2.x), projection(pair2.y))
    in_quotient = check_beauville(Q, q1, q2)
    preserved = all(G.element_order(g) == Q.element_order(projection(g)) for g in pair1.triple)
    verdict = LiftVerdict(in_quotient.beauville and preserved, in_quotient.beauville, preserved, Q.order)
    if not in_quotient.beauville:
        verdict.reason = f"quotient pairs are not a Beauville structure: {in_quotient.diagnostic}"
    elif not preserved:
        verdict.reason = "first triple loses order in the quotient"
    if G.order <= SEARCH_SETTINGS["FULL_SIGMA_CAP"]:
        verdict.direct = check_beauville(G, pair1, pair2, use_lemma=False).beauville
        if verdict.lifts and not verdict.direct:
            raise AssertionError(f"lifted structure fails on {G.name}")
    logger.debug(f"{G.name} -> {Q.name}: lifts={verdict.lifts} direct={verdict.direct}")
    return verdict
