"""The reproduction suite: every published group, structure and identity, rechecked from scratch.

Each check returns a CheckResult; ``run_suite`` runs a selection in a fixed
order so the resulting report is deterministic.
"""
from __future__ import annotations

import time
from math import comb
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, Field

from ..beauville.lifting import lift_check
from ..beauville.search import SearchMode
from ..beauville.structures import (check_beauville, check_strongly_real, orders_preserve_applies,
                                    paper_structure)
from ..constructions.families import (PaperGroup, build_abelian, build_case_i, build_case_ii, build_case_iii,
                                      build_negative, from_layered, theta_automorphism)
from ..constructions.refinement import lower_term, refinement_series
from ..groups.homomorphism import hom_from_images
from ..groups.quotient import quotient_group
from ..groups.subgroups import derived_subgroup, frattini
from ..nq.triangle import TriangleParams, triangle_quotient
from ..pc.pcp_format import format_document
from ..utils.cache import ResultCache
from ..utils.config import SEARCH_SETTINGS
from ..utils.logger import default_logger
from .report import cached_search, lift_payload

logger = default_logger.getChild("Reproduce")


class CheckResult(BaseModel):
    name: str
    passed: bool
    details: dict[str, Any] = Field(default_factory=dict)
    elapsed_ms: float = 0.0


_builders: dict[tuple, PaperGroup] = {}


def _group(builder: Callable[..., PaperGroup], *args: int) -> PaperGroup:
    key = (builder.__name__, *args)
    if key not in _builders:
        _builders[key] = builder(*args)
    return _builders[key]


def _orders(pg: PaperGroup) -> tuple[int, int, int]:
    G = pg.group
    return G.element_order(pg.x), G.element_order(pg.y), G.element_order(G.mul(pg.x, pg.y))


SPECIAL_QUOTIENTS = [
    # builder, args, order, exponent, o(xy)
    (build_case_i, (5, 1), 125, 5, 5),
    (build_case_i, (7, 1), 343, 7, 7),
    (build_case_i, (5, 2), 15625, 25, 25),
    (build_case_ii, (1,), 243, 9, 9),
    (build_case_iii, (2,), 128, 4, 4),
    (build_case_iii, (3,), 4096, 8, 8),
]


def check_special_quotients() -> CheckResult:
    rows, passed = [], True
    for builder, args, order, exponent, xy in SPECIAL_QUOTIENTS:
        pg = _group(builder, *args)
        got = (pg.group.order, pg.group.exponent(), _orders(pg)[2])
        ok = got == (order, exponent, xy)
        passed &= ok
        rows.append({"group": pg.name, "order": str(got[0]), "exponent": str(got[1]), "o(xy)": got[2], "ok": ok})
    return CheckResult(name="special-quotients", passed=passed, details={"groups": rows})


NQ_CROSS = [
    # triangle parameters, class, builder, args
    ((5, 1, None), 2, build_case_i, (5, 1)),
    ((7, 1, None), 2, build_case_i, (7, 1)),
    ((5, 2, None), 2, build_case_i, (5, 2)),
    ((3, 1, None), 3, build_case_ii, (1,)),
    ((2, 2, None), 3, build_case_iii, (2,)),
    ((2, 3, None), 3, build_case_iii, (3,)),
    ((3, 1, 3), 3, build_negative, (1,)),
]


def check_nq_cross_validation() -> CheckResult:
    rows, passed = [], True
    for (p, k, r), cls, builder, args in NQ_CROSS:
        tp = TriangleParams(p, k, r)
        quotient = from_layered(triangle_quotient(tp, cls))
        pg = _group(builder, *args)
        same = quotient.group.order == pg.group.order and _orders(quotient) == _orders(pg)
        iso = False
        if same:
            hom = hom_from_images(quotient.group, pg.group, [quotient.x, quotient.y], [pg.x, pg.y])
            iso = hom.is_bijective()
        passed &= iso
        rows.append({"triangle": tp.label, "class": cls, "target": pg.name,
                     "order": str(quotient.group.order), "isomorphic": iso})
    return CheckResult(name="nq-cross-validation", passed=passed, details={"groups": rows})


STRONGLY_REAL = [
    (build_case_i, (5, 1), (1, 3)),
    (build_case_i, (7, 1), (1, 3)),
    (build_case_ii, (1,), (1, 2)),
    (build_case_iii, (2,), (1, 2)),
    (build_case_i, (5, 2), (1, 3)),
]


def check_strongly_real_structures() -> CheckResult:
    rows, passed = [], True
    for builder, args, (n1, n2) in STRONGLY_REAL:
        pg = _group(builder, *args)
        structure = paper_structure(pg, n1, n2)
        cert = check_beauville(pg.group, structure.pair1, structure.pair2, use_lemma=False)
        cert = check_strongly_real(pg.group, cert, pg.theta)
        ok = bool(cert.strongly_real) and cert.conjugators == (pg.group.identity, pg.group.identity)
        passed &= ok
        rows.append({"group": pg.name, "n1": n1, "n2": n2, "sigma_sizes": list(cert.sigma_sizes or ()),
                     "strongly_real": ok})
    return CheckResult(name="strongly-real", passed=passed, details={"groups": rows})


def check_signatures() -> CheckResult:
    rows, passed = [], True
    for builder, args, (n1, n2) in STRONGLY_REAL:
        pg = _group(builder, *args)
        p, k = pg.params["p"], pg.params["k"]
        expected = (p ** k, p ** k, p ** (k + 1)) if p == 3 else (p ** k,) * 3
        got = paper_structure(pg, n1, n2).pair1.signature
        passed &= got == expected
        rows.append({"group": pg.name, "signature": list(got), "expected": list(expected)})
    return CheckResult(name="signatures", passed=passed, details={"groups": rows})


def check_negative_group(cache: ResultCache | None = None) -> CheckResult:
    pg = _group(build_negative, 1)
    G = pg.group
    outcome = cached_search(G, format_document(pg.document()), SearchMode.prove_none, cache=cache)
    k = pg.params["k"]
    e = 3 ** (k - 1)
    derived = derived_subgroup(G)
    x_power = G.power(pg.x, e)
    coset = {G.mul(x_power, G.power(c, e)) for c in derived.members()}
    in_coset = np.zeros(G.order, dtype=bool)
    in_coset[list(coset)] = True
    class_ok = set(G.conjugacy_class(x_power).members()) == coset
    phi = frattini(G)
    powers_ok = all(in_coset[G.power(G.mul(pg.x, u), e)] for u in phi.members())
    return CheckResult(
        name="negative-group",
        passed=not outcome["found"] and class_ok and powers_ok and G.order == 81,
        details={"group": G.name, "order": str(G.order), "found": outcome["found"],
                 "generating_pairs": outcome["generating_pairs"], "distinct_sigma": outcome["distinct_sigma"],
                 "sigma_pairs_checked": outcome["sigma_pairs_checked"],
                 "class_of_x_power": class_ok, "same_powers": powers_ok},
    )


REFINEMENTS = [
    (build_case_ii, (1,), (2, 3)),
    (build_case_ii, (2,), (2,)),
    (build_case_iii, (2,), (2, 3)),
    (build_case_i, (5, 1), (2,)),
]


def check_refinement_series() -> CheckResult:
    rows, passed = [], True
    for builder, args, weights in REFINEMENTS:
        pg = _group(builder, *args)
        for i in weights:
            series = refinement_series(pg, i)
            problems = series.check()
            ok = (not problems and all(series.invariant)
                  and all(index == pg.prime for index in series.indices))
            passed &= ok
            rows.append({"group": pg.name, "weight": i, "orders": [str(o) for o in series.orders],
                         "labels": series.labels, "ok": ok, "problems": problems})
    return CheckResult(name="refinement-series", passed=passed, details={"series": rows})


BEYOND = [
    # triangle parameters, recipe
    ((3, 1, 9), (1, 2)),
    ((2, 2, None), (1, 2)),
]


def check_beyond_presentations(class_bound: int = 4) -> CheckResult:
    rows, passed = [], True
    for (p, k, r), (n1, n2) in BEYOND:
        tp = TriangleParams(p, k, r)
        lp = triangle_quotient(tp, class_bound)
        if lp.stabilized and lp.nilpotency_class < class_bound:
            rows.append({"triangle": tp.label, "stabilized_at": lp.nilpotency_class})
            continue
        top = from_layered(lp)
        for N in refinement_series(top, class_bound).terms:
            Q, projection = quotient_group(top.group, N)
            quotient = PaperGroup("triangle", dict(top.params), Q,
                                  {"x": projection(top.x), "y": projection(top.y)})
            quotient.theta = theta_automorphism(quotient)
            structure = paper_structure(quotient, n1, n2)
            row: dict[str, Any] = {"triangle": tp.label, "normal": N.label, "order": str(Q.order)}
            if Q.order <= SEARCH_SETTINGS["FULL_SIGMA_CAP"]:
                cert = check_beauville(Q, structure.pair1, structure.pair2, use_lemma=False)
                ok = bool(check_strongly_real(Q, cert, quotient.theta).strongly_real)
                row["method"] = "full"
            else:
                verdict = lift_check(lower_term(quotient, class_bound), structure.pair1, structure.pair2)
                ok = verdict.lifts
                row["method"] = "lift"
                row["lift"] = lift_payload(verdict, f"gamma_{class_bound}")
            passed &= ok
            rows.append({**row, "ok": ok})
    return CheckResult(name="beyond-presentations", passed=passed, details={"quotients": rows})


def check_catanese(cache: ResultCache | None = None) -> CheckResult:
    rows, passed = [], True
    for n in (2, 3, 4, 5, 6, 7, 8, 9, 11, 13):
        expected = n > 1 and n % 2 != 0 and n % 3 != 0
        pg = build_abelian(n)
        found = cached_search(pg.group, format_document(pg.document()), SearchMode.find, cache=cache)["found"]
        passed &= found == expected
        rows.append({"n": n, "found": found, "expected": expected})
    return CheckResult(name="catanese", passed=passed, details={"groups": rows})


def _power_formula(pg: PaperGroup) -> bool:
    G = pg.group
    x, y, z, t, w = (pg.dist_gens[g] for g in ("x", "y", "z", "t", "w"))
    xy = G.mul(x, y)
    for n in range(1, 2 * G.exponent() + 1):
        expected = G.identity
        for g, e in ((x, n), (y, n), (z, comb(n, 2)), (t, comb(n, 3)), (w, (n - 1) * n * (2 * n - 1) // 6)):
            expected = G.mul(expected, G.power(g, e))
        if G.power(xy, n) != expected:
            return False
    return True


def _commutator_formula(pg: PaperGroup) -> bool:
    G = pg.group
    x, y, z, t = (pg.dist_gens[g] for g in ("x", "y", "z", "t"))
    return all(G.comm(y, G.power(x, i)) == G.mul(G.power(z, i), G.power(t, comb(i, 2)))
               for i in range(1, G.exponent() + 1))


def _power_map_is_multiplicative(pg: PaperGroup, e: int) -> bool:
    G = pg.group
    powers = [G.power(g, e) for g in range(G.order)]
    return all(powers[G.mul(g, h)] == G.mul(powers[g], powers[h]) for g in range(G.order) for h in range(G.order))


def _frattini_absorbed(pg: PaperGroup, e: int) -> bool:
    G = pg.group
    phi = frattini(G).members()
    return all(G.power(G.mul(g, h), e) == G.power(g, e) for g in range(G.order) for h in phi)


def _orders_preserve_samples(pg: PaperGroup, samples: int, seed: int = 0) -> tuple[bool, int]:
    """Random pairs meeting the hypotheses; the conjugates of <a> and <b> must meet trivially"""
    G = pg.group
    rng = np.random.default_rng(seed)
    tried = qualifying = 0
    while qualifying < samples and tried < 50 * samples:
        a, b = (int(v) for v in rng.integers(0, G.order, size=2))
        tried += 1
        if not orders_preserve_applies(G, a, b):
            continue
        qualifying += 1
        if not (G.cyclic_conjugates(a) & G.cyclic_conjugates(b)).is_trivial():
            return False, qualifying
    return True, qualifying


def check_identities(samples: int = 1000) -> CheckResult:
    case_ii, case_iii = _group(build_case_ii, 1), _group(build_case_iii, 2)
    details: dict[str, Any] = {
        "power_formula": _power_formula(case_ii) and _power_formula(case_iii),
        "commutator_formula": _commutator_formula(case_ii) and _commutator_formula(case_iii),
        "power_map_multiplicative": _power_map_is_multiplicative(case_iii, 4),
        "frattini_absorbed": _frattini_absorbed(case_ii, 3),
    }
    lemma = {}
    for pg in (_group(build_case_i, 5, 1), case_ii, case_iii):
        ok, count = _orders_preserve_samples(pg, samples)
        lemma[pg.name] = {"ok": ok, "samples": count}
    details["orders_preserve"] = lemma
    passed = all(v for k, v in details.items() if k != "orders_preserve") and all(
        v["ok"] for v in lemma.values())
    return CheckResult(name="identities", passed=passed, details=details)


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "special-quotients": check_special_quotients,
    "nq-cross-validation": check_nq_cross_validation,
    "strongly-real": check_strongly_real_structures,
    "signatures": check_signatures,
    "negative-group": check_negative_group,
    "refinement-series": check_refinement_series,
    "beyond-presentations": check_beyond_presentations,
    "catanese": check_catanese,
    "identities": check_identities,
}


# checks whose searches go through the result cache
CACHED_CHECKS = frozenset({"negative-group", "catanese"})


def run_suite(names: list[str] | None = None, cache: ResultCache | None = None) -> list[CheckResult]:
    results = []
    for name in names or list(CHECKS):
        start = time.perf_counter()
        result = CHECKS[name](cache=cache) if name in CACHED_CHECKS else CHECKS[name]()
        result.elapsed_ms = round((time.perf_counter() - start) * 1000, 1)
        level = logger.info if result.passed else logger.error
        level(f"{name}: {'passed' if result.passed else 'FAILED'} in {result.elapsed_ms / 1000:.1f} s")
        results.append(result)
    return results
