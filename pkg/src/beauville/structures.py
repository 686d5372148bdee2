"""Sigma-sets, Beauville structures and their strongly real refinement.

For a generating pair (x, y) of G, Sigma(x, y) is the union of the conjugates
of <x>, <y> and <xy>. Two generating pairs form a Beauville structure when
their Sigma-sets meet only in the identity; the structure is strongly real
for an automorphism theta when, for each pair, some g satisfies
g theta(x) g^-1 = x^-1 and g theta(y) g^-1 = y^-1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from ..constructions.families import PaperGroup
from ..groups.element_set import ElementSet
from ..groups.finite_group import FiniteGroup
from ..groups.homomorphism import Homomorphism
from ..groups.quotient import quotient_group
from ..groups.subgroups import agemo, derived_subgroup, frattini, nilpotency_class, subgroup_closure
from ..utils.errors import ParameterError
from ..utils.logger import default_logger

logger = default_logger.getChild("Beauville")


@dataclass(frozen=True)
class GenPair:
    x: int
    y: int
    xy: int
    signature: tuple[int, int, int]
    generating: bool

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.x, self.y, self.xy


def make_pair(G: FiniteGroup, x: int, y: int) -> GenPair:
    xy = G.mul(x, y)
    signature = (G.element_order(x), G.element_order(y), G.element_order(xy))
    return GenPair(x, y, xy, signature, is_generating_pair(G, x, y))


@dataclass
class BeauvilleCertificate:
    pair1: GenPair
    pair2: GenPair
    beauville: bool
    intersection_witness: int | None = None
    diagnostic: str = ""
    sigma_sizes: tuple[int, int] | None = None
    lemma_pairs: int = 0
    strongly_real: bool | None = None
    automorphism: Homomorphism | None = field(default=None, repr=False)
    conjugators: tuple[int, int] | None = None


def sigma(G: FiniteGroup, x: int, y: int) -> ElementSet:
    """Union of all conjugates of <x>, <y> and <xy>"""
    mask = G.cyclic_conjugates(x).mask | G.cyclic_conjugates(y).mask | G.cyclic_conjugates(G.mul(x, y)).mask
    return ElementSet(G, mask, label=f"Sigma({G.format_element(x)}, {G.format_element(y)})")


def frattini_projection(G: FiniteGroup) -> tuple[FiniteGroup, Homomorphism]:
    cached = G.cache.get("frattini_quotient")
    if cached is None:
        cached = G.cache["frattini_quotient"] = quotient_group(G, frattini(G), name=f"{G.name}/Phi")
    return cached


def abelianization(G: FiniteGroup) -> tuple[FiniteGroup, Homomorphism]:
    cached = G.cache.get("abelianization")
    if cached is None:
        derived = derived_subgroup(G)
        if derived.size == G.order:
            raise ParameterError(f"{G.name} is perfect")
        cached = G.cache["abelianization"] = quotient_group(G, derived, name=f"{G.name}/G'")
    return cached


def is_generating_pair(G: FiniteGroup, x: int, y: int) -> bool:
    """For p-groups the images in G/Phi(G) must span it; otherwise close up and count"""
    if G.order == 1:
        return True
    if G.prime is None:
        return subgroup_closure(G, [x, y]).size == G.order
    Q, projection = frattini_projection(G)
    rank = Q.n
    if rank > 2:
        return False
    u, v = Q.vector(projection(x)), Q.vector(projection(y))
    if rank == 1:
        return bool(u[0] or v[0])
    return (u[0] * v[1] - u[1] * v[0]) % G.prime != 0


def orders_preserve_applies(G: FiniteGroup, a: int, b: int) -> bool:
    """G/G' = <aG'> x <bG'> with o(a) = o(aG') or o(b) = o(bG'): then the conjugates of <a> and <b> meet trivially"""
    if G.prime is None:
        return False
    Q, projection = abelianization(G)
    a_bar, b_bar = projection(a), projection(b)
    oa, ob = Q.element_order(a_bar), Q.element_order(b_bar)
    if oa * ob != Q.order or subgroup_closure(Q, [a_bar, b_bar]).size != Q.order:
        return False
    return G.element_order(a) == oa or G.element_order(b) == ob


def check_beauville(G: FiniteGroup, p1: GenPair, p2: GenPair, use_lemma: bool = True) -> BeauvilleCertificate:
    if not p1.generating or not p2.generating:
        which = "pair 1" if not p1.generating else "pair 2"
        return BeauvilleCertificate(p1, p2, False, diagnostic=f"not generating: {which}")
    lemma_pairs = 0
    for a in p1.triple:
        for b in p2.triple:
            if use_lemma and orders_preserve_applies(G, a, b):
                lemma_pairs += 1
                continue
            common = G.cyclic_conjugates(a) & G.cyclic_conjugates(b)
            if not common.is_trivial():
                witness = common.smallest_nontrivial()
                diagnostic = (f"conjugates of <{G.format_element(a)}> and <{G.format_element(b)}> "
                              f"share {G.format_element(witness)}")
                return BeauvilleCertificate(p1, p2, False, witness, diagnostic,
                                            (sigma(G, p1.x, p1.y).size, sigma(G, p2.x, p2.y).size), lemma_pairs)
    return BeauvilleCertificate(p1, p2, True, None, "",
                                (sigma(G, p1.x, p1.y).size, sigma(G, p2.x, p2.y).size), lemma_pairs)


def real_conjugator(G: FiniteGroup, pair: GenPair, theta: Homomorphism, search: bool = False) -> int | None:
    """Some g with g theta(x) g^-1 = x^-1 and g theta(y) g^-1 = y^-1, the identity tried first"""
    tx, ty = theta(pair.x), theta(pair.y)
    x_inv, y_inv = G.inv(pair.x), G.inv(pair.y)
    candidates = range(G.order) if search else (G.identity,)
    for g in candidates:
        g_inv = G.inv(g)
        if G.mul(G.mul(g, tx), g_inv) == x_inv and G.mul(G.mul(g, ty), g_inv) == y_inv:
            return g
    return None


def check_strongly_real(G: FiniteGroup, cert: BeauvilleCertificate, theta: Homomorphism,
                        search_conjugators: bool = False) -> BeauvilleCertificate:
    if not theta.is_automorphism:
        raise ParameterError("theta is not an automorphism")
    if not cert.beauville:
        cert.strongly_real = False
        return cert
    g1 = real_conjugator(G, cert.pair1, theta, search_conjugators)
    g2 = real_conjugator(G, cert.pair2, theta, search_conjugators) if g1 is not None else None
    if g1 is None or g2 is None:
        cert.strongly_real = False
        cert.diagnostic = f"theta does not invert pair {1 if g1 is None else 2} up to conjugation"
        return cert
    cert.strongly_real = True
    cert.automorphism = theta
    cert.conjugators = (g1, g2)
    return cert


class PaperStructure(NamedTuple):
    pair1: GenPair
    pair2: GenPair
    off_recipe: bool
    note: str


def recipe_congruences(p: int | None) -> tuple[int, int, int] | None:
    """(modulus, n1 residue, n2 residue) for w_i = (xy)^{n_i} x"""
    if p is None:
        return None
    if p == 2:
        return 4, 1, 2
    if p == 3:
        return 9, 1, 2
    return p, 1, 3


def paper_structure(pg: PaperGroup, n1: int, n2: int) -> PaperStructure:
    """{x, y} and {(xy)^n1 x, (xy)^n2 x}, flagged when n1, n2 miss the family's congruences"""
    G = pg.group
    xy = G.mul(pg.x, pg.y)
    w1 = G.mul(G.power(xy, n1), pg.x)
    w2 = G.mul(G.power(xy, n2), pg.x)
    recipe = recipe_congruences(pg.prime)
    if recipe is None:
        off, note = True, f"{G.name} is not a p-group, no congruence recipe"
    else:
        modulus, r1, r2 = recipe
        off = n1 % modulus != r1 or n2 % modulus != r2
        note = f"recipe n1 = {r1}, n2 = {r2} mod {modulus}" + (" not met" if off else "")
    if off:
        logger.warning(f"{G.name}: n1={n1}, n2={n2} off recipe ({note})")
    return PaperStructure(make_pair(G, pg.x, pg.y), make_pair(G, w1, w2), off, note)


@dataclass
class RegularityCriterion:
    prime: int
    exponent: int
    agemo_size: int
    nilpotency_class: int
    beauville: bool
    automatic_regularity: bool


def regular_criterion(G: FiniteGroup) -> RegularityCriterion:
    """p >= 5 and |G^{p^{e-1}}| >= p^2 for exp G = p^e; only meaningful for regular groups"""
    p = G.prime
    if p is None:
        raise ParameterError(f"{G.name} is not a p-group")
    exponent = G.exponent()
    e = _log(exponent, p)
    size = agemo(G, e - 1).size
    cls = nilpotency_class(G)
    automatic = cls < p
    if not automatic:
        logger.warning(f"{G.name} has class {cls} >= p = {p}; regularity is not automatic")
    return RegularityCriterion(p, exponent, size, cls, p >= 5 and size >= p * p, automatic)


def _log(value: int, base: int) -> int:
    e = 0
    while value > 1:
        value //= base
        e += 1
    return e
