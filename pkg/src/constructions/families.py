"""Explicit p-group families: the lower central quotients of the triangle groups
T(q, q, r), a collapsing quotient for r = q when p = 3, and C_n x C_n.

Every group comes with its distinguished generators and the automorphism
inverting x and y.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from sympy import factorint, isprime

from ..groups.finite_group import FiniteGroup, enumerate_group
from ..groups.homomorphism import Homomorphism, hom_from_images
from ..groups.quotient import quotient_group
from ..groups.subgroups import normal_closure
from ..nq.triangle import LayeredPresentation, image_elements
from ..pc.pcp_format import PcDocument, parse_document
from ..pc.presentation import build_presentation, vector_word
from ..utils.errors import HomomorphismError, ParameterError
from ..utils.logger import default_logger

logger = default_logger.getChild("Constructions")

FAMILIES = ("case-i", "case-ii", "case-iii", "negative", "abelian")


@dataclass
class PaperGroup:
    family: str
    params: dict[str, int]
    group: FiniteGroup
    dist_gens: dict[str, int]
    theta: Homomorphism | None = field(default=None, repr=False)

    @property
    def x(self) -> int:
        return self.dist_gens["x"]

    @property
    def y(self) -> int:
        return self.dist_gens["y"]

    @property
    def name(self) -> str:
        return self.group.name

    @property
    def prime(self) -> int | None:
        return self.group.prime

    def word(self, idx: int):
        return vector_word(self.group.vector(idx))

    def document(self) -> PcDocument:
        doc = PcDocument(self.group.presentation)
        doc.distinguished = {name: self.word(g) for name, g in self.dist_gens.items()}
        if self.theta is not None:
            doc.theta = {name: self.word(self.theta(self.dist_gens[name])) for name in ("x", "y")}
        return doc


def _check_k(k: int) -> None:
    if k < 1:
        raise ParameterError("k must be at least 1")


def _distinguished(group: FiniteGroup, names: tuple[str, ...]) -> dict[str, int]:
    p = group.presentation
    return {name: group.generator(p.index_of(name)) for name in names}


def theta_automorphism(pg: PaperGroup) -> Homomorphism:
    """The automorphism with x -> x^-1 and y -> y^-1"""
    G = pg.group
    try:
        theta = hom_from_images(G, G, [pg.x, pg.y], [G.inv(pg.x), G.inv(pg.y)])
    except HomomorphismError as exc:
        raise HomomorphismError(f"inversion of x, y does not extend on {G.name}: {exc}") from exc
    if not theta.is_automorphism:
        raise HomomorphismError(f"inversion of x, y is not an automorphism of {G.name}")
    return theta


def _finish(pg: PaperGroup) -> PaperGroup:
    pg.theta = theta_automorphism(pg)
    logger.info(f"Built {pg.name}: order {pg.group.order}")
    return pg


def build_case_i(p: int, k: int) -> PaperGroup:
    """<x, y, z | x^q = y^q = z^q = 1, [y, x] = z> with q = p^k, p > 3"""
    if not isprime(p) or p <= 3:
        raise ParameterError(f"case-i needs a prime p > 3, got {p}")
    _check_k(k)
    q = p ** k
    presentation = build_presentation(
        f"case_i_{p}_{k}", [("x", q), ("y", q), ("z", q)],
        comms={("y", "x"): [("z", 1)]}, weights=(1, 1, 2))
    group = enumerate_group(presentation)
    return _finish(PaperGroup("case-i", {"p": p, "k": k}, group, _distinguished(group, ("x", "y", "z"))))


def _class_three(name: str, top: int, bottom: int):
    return build_presentation(
        name, [("x", top), ("y", top), ("z", bottom), ("t", bottom), ("w", bottom)],
        comms={("y", "x"): [("z", 1)], ("z", "x"): [("t", 1)], ("z", "y"): [("w", 1)]},
        weights=(1, 1, 2, 3, 3))


def build_case_ii(k: int) -> PaperGroup:
    """Class three with every generator of order 3^k"""
    _check_k(k)
    q = 3 ** k
    group = enumerate_group(_class_three(f"case_ii_3_{k}", q, q))
    return _finish(PaperGroup("case-ii", {"p": 3, "k": k}, group,
                              _distinguished(group, ("x", "y", "z", "t", "w"))))


def build_case_iii(k: int) -> PaperGroup:
    """Class three with x, y of order 2^k and the rest of order 2^(k-1)"""
    if k < 2:
        raise ParameterError(f"case-iii needs k >= 2 so that q = 2^k > 2, got {k}")
    group = enumerate_group(_class_three(f"case_iii_2_{k}", 2 ** k, 2 ** (k - 1)))
    return _finish(PaperGroup("case-iii", {"p": 2, "k": k}, group,
                              _distinguished(group, ("x", "y", "z", "t", "w"))))


def build_negative(k: int) -> PaperGroup:
    """The class-three quotient of T(3^k, 3^k, 3^k): case-ii modulo the normal closure of (xy)^(3^k)"""
    _check_k(k)
    parent = build_case_ii(k)
    G = parent.group
    relator = G.power(G.mul(parent.x, parent.y), 3 ** k)
    N = normal_closure(G, [relator], label="<<(xy)^q>>")
    Q, projection = quotient_group(G, N, name=f"negative_3_{k}")
    dist = {name: projection(g) for name, g in parent.dist_gens.items()}
    return _finish(PaperGroup("negative", {"p": 3, "k": k}, Q, dist))


def build_abelian(n: int) -> PaperGroup:
    """C_n x C_n, one pair of pc generators per prime dividing n"""
    if n < 2:
        raise ParameterError(f"abelian family needs n >= 2, got {n}")
    factors = sorted(factorint(n).items())
    if len(factors) == 1:
        gens = [("x", n), ("y", n)]
    else:
        gens = [(f"{g}{p}", p ** e) for p, e in factors for g in ("x", "y")]
    group = enumerate_group(build_presentation(f"abelian_{n}", gens, weights=(1,) * len(gens)))
    x = y = group.identity
    for i, (name, _) in enumerate(gens):
        if name.startswith("x"):
            x = group.mul(x, group.generator(i))
        else:
            y = group.mul(y, group.generator(i))
    return _finish(PaperGroup("abelian", {"n": n}, group, {"x": x, "y": y}))


def build_family(family: str, p: int | None = None, k: int | None = None, n: int | None = None) -> PaperGroup:
    """Dispatch on the family name used by the command line"""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}, expected one of {', '.join(FAMILIES)}")
    if family == "abelian":
        if n is None:
            raise ParameterError("abelian family needs --n")
        return build_abelian(n)
    if k is None:
        raise ParameterError(f"{family} needs --k")
    if family == "case-i":
        if p is None:
            raise ParameterError("case-i needs --p")
        return build_case_i(p, k)
    expected = {"case-ii": 3, "case-iii": 2, "negative": 3}[family]
    if p is not None and p != expected:
        raise ParameterError(f"{family} is defined for p = {expected}, got {p}")
    return {"case-ii": build_case_ii, "case-iii": build_case_iii, "negative": build_negative}[family](k)


def from_layered(lp: LayeredPresentation) -> PaperGroup:
    """A triangle-group quotient with x, y the images of a, b"""
    group = enumerate_group(lp.presentation)
    images = image_elements(lp, group)
    tp = lp.params
    pg = PaperGroup("triangle", {"p": tp.p, "k": tp.k, "r": tp.r, "class": lp.nilpotency_class}, group,
                    {"x": images["a"], "y": images["b"]})
    return _finish(pg)


_NAME = re.compile(r"(case_iii|case_ii|case_i|negative)_(\d+)_(\d+)|abelian_(\d+)$")


def _family_from_name(name: str) -> tuple[str, dict[str, int]]:
    match = _NAME.fullmatch(name)
    if match is None:
        return "loaded", {}
    if match.group(4):
        return "abelian", {"n": int(match.group(4))}
    return match.group(1).replace("_", "-"), {"p": int(match.group(2)), "k": int(match.group(3))}


def load_paper_group(text: str) -> PaperGroup:
    """Rebuild a group from .pcp text; x and y default to the first two generators"""
    doc = parse_document(text)
    group = enumerate_group(doc.presentation)
    dist = {name: group.element(word) for name, word in doc.distinguished.items()}
    if "x" not in dist or "y" not in dist:
        if "a" in doc.images and "b" in doc.images:
            dist.update(x=group.element(doc.images["a"]), y=group.element(doc.images["b"]))
        elif group.n >= 2:
            dist.update(x=group.generator(0), y=group.generator(1))
        else:
            raise ParameterError(f"{group.name} has fewer than two generators")
    family, params = _family_from_name(group.name)
    pg = PaperGroup(family, params, group, dist)
    if doc.theta:
        missing = {"x", "y"} - set(doc.theta)
        if missing:
            raise ParameterError(f"theta stanza lacks {', '.join(sorted(missing))}")
        theta = hom_from_images(group, group, [pg.x, pg.y],
                                [group.element(doc.theta["x"]), group.element(doc.theta["y"])])
        if not theta.is_automorphism:
            raise HomomorphismError("theta stanza does not define an automorphism")
        pg.theta = theta
    else:
        try:
            pg.theta = theta_automorphism(pg)
        except (HomomorphismError, ParameterError) as exc:
            logger.warning(f"No inversion automorphism on {group.name}: {exc}")
    return pg
