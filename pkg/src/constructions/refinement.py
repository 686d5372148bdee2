"""Refining the lower central series to a chain with prime steps.

Between gamma_{i+1} and gamma_i the weight-i left-normed commutators in x, y
are adjoined one at a time, in lexicographic order with x < y. Each one, s,
enters through its p-power chain <M, s^(p^j)>, so consecutive terms have
index p. Terms between two lower central terms are automatically normal.
"""
from __future__ import annotations

from itertools import product

from .families import PaperGroup
from ..groups.element_set import ElementSet
from ..groups.subgroups import Closure, NormalSeries, lower_central_series
from ..utils.errors import ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("Refinement")


def weight_commutators(pg: PaperGroup, weight: int) -> list[tuple[str, int]]:
    """Left-normed commutators of the given length in x and y, lexicographic with x < y"""
    G = pg.group
    gens = {"x": pg.x, "y": pg.y}
    result = []
    for letters in product("xy", repeat=weight):
        label = letters[0] if weight == 1 else f"[{','.join(letters)}]"
        result.append((label, G.comm_left_normed([gens[c] for c in letters])))
    return result


def lower_term(pg: PaperGroup, i: int) -> ElementSet:
    """gamma_i, the trivial subgroup past the end of the series"""
    terms = lower_central_series(pg.group).terms
    return terms[i - 1] if i <= len(terms) else terms[-1]


@timing_decorator(logger)
def refinement_series(pg: PaperGroup, i: int) -> NormalSeries:
    """gamma_i = N_m > ... > N_0 = gamma_{i+1}, each step of index p, flagged for theta-invariance"""
    if i < 1:
        raise ParameterError(f"refinement weight must be at least 1, got {i}")
    G = pg.group
    p = G.prime
    if p is None:
        raise ParameterError(f"{G.name} is not a p-group")
    upper, lower = lower_term(pg, i), lower_term(pg, i + 1)
    closure = Closure(G)
    for g in lower.generators if lower.generators is not None else lower.members():
        closure.add(g)
    ascending = [lower]
    adjoined = [lower.label]
    for label, s in weight_commutators(pg, i):
        if s in closure:
            continue
        m = 0
        while G.power(s, p ** m) not in closure:
            m += 1
        for j in range(m - 1, -1, -1):
            closure.add(G.power(s, p ** j))
            power = f"^{p ** j}" if j else ""
            if j < m - 1:
                adjoined.pop()
            adjoined.append(f"{label}{power}")
            ascending.append(closure.to_set(normal=True, label=f"<{', '.join(adjoined)}>"))
    if ascending[-1].size != upper.size:
        raise AssertionError(f"weight-{i} commutators do not generate gamma_{i} of {G.name}")
    series = NormalSeries(G, list(reversed(ascending)))
    if pg.theta is not None:
        series.mark_invariant(pg.theta)
    logger.debug(f"{G.name} weight {i} refinement orders {series.orders}")
    return series


def full_refinement(pg: PaperGroup) -> NormalSeries:
    """Concatenated refinements from G down to 1"""
    lcs = lower_central_series(pg.group)
    terms: list[ElementSet] = []
    invariant: list[bool | None] = []
    for i in range(1, len(lcs.terms)):
        part = refinement_series(pg, i)
        start = 0 if not terms else 1
        terms.extend(part.terms[start:])
        invariant.extend(part.invariant[start:])
    if not terms:
        terms, invariant = [lcs.terms[0]], [True]
    return NormalSeries(pg.group, terms, invariant)
