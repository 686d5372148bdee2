"""Exhaustive search for Beauville structures.

Generating pairs are enumerated in lexicographic order of (x, y) and grouped by
Sigma-set; Sigma(x, y) only depends on the conjugacy classes of x, y and xy,
so the classes of the triple are the grouping key and the lexicographically
least pair of each group is its representative. Two groups of pairs give a
Beauville structure exactly when their Sigma-sets meet in the identity, so
checking all pairs of distinct Sigma-sets is exhaustive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from .structures import (BeauvilleCertificate, check_beauville, check_strongly_real, frattini_projection,
                         is_generating_pair, make_pair, real_conjugator, sigma)
from ..groups.finite_group import FiniteGroup
from ..groups.homomorphism import Homomorphism
from ..utils.config import SEARCH_SETTINGS
from ..utils.errors import CapExceededError, ParameterError
from ..utils.logger import default_logger, timing_decorator

logger = default_logger.getChild("Search")


class SearchMode(str, Enum):
    find = "find"
    prove_none = "prove-none"
    find_strongly_real = "find-strongly-real"


@dataclass
class SigmaClass:
    key: tuple[int, ...]
    representative: tuple[int, int]
    bits: int
    size: int
    pairs: int = 1


@dataclass
class NoneProof:
    """What an exhaustive run looked at"""
    ordered_pairs: int
    generating_pairs: int
    distinct_sigma: int
    sigma_pairs_checked: int


@dataclass
class SearchOutcome:
    mode: SearchMode
    group: str
    certificate: BeauvilleCertificate | None
    proof: NoneProof
    sigma_classes: list[SigmaClass] = field(default_factory=list, repr=False)

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _generating_partners(G: FiniteGroup) -> list[np.ndarray]:
    """For every x, the y (ascending) with <x, y> = G"""
    if G.prime is None:
        return [np.array([y for y in range(G.order) if is_generating_pair(G, x, y)], dtype=np.int64)
                for x in range(G.order)]
    Q, projection = frattini_projection(G)
    if Q.n > 2:
        return [np.empty(0, dtype=np.int64)] * G.order
    vectors = np.array([Q.vector(projection(g)) for g in range(G.order)], dtype=np.int64).reshape(G.order, Q.n)
    if Q.n == 1:
        nonzero = vectors[:, 0] % G.prime != 0
        everything = np.arange(G.order, dtype=np.int64)
        return [everything if nonzero[x] else np.flatnonzero(nonzero) for x in range(G.order)]
    partners = []
    for x in range(G.order):
        det = (vectors[x, 0] * vectors[:, 1] - vectors[x, 1] * vectors[:, 0]) % G.prime
        partners.append(np.flatnonzero(det))
    return partners


def _products(G: FiniteGroup, x: int, ys: np.ndarray) -> np.ndarray:
    if G.table is not None:
        return G.table[x, ys]
    return np.array([G.mul(x, int(y)) for y in ys], dtype=np.int64)


def _is_real_pair(G: FiniteGroup, x: int, y: int, theta: Homomorphism, class_ids: np.ndarray) -> int | None:
    tx, ty = theta(x), theta(y)
    if class_ids[tx] != class_ids[G.inv(x)] or class_ids[ty] != class_ids[G.inv(y)]:
        return None
    return real_conjugator(G, make_pair(G, x, y), theta, search=True)


def sigma_classes(G: FiniteGroup, theta: Homomorphism | None = None,
                  progress: bool = False) -> tuple[list[SigmaClass], int]:
    """Distinct Sigma-sets over all generating pairs, with the number of generating pairs.

    With theta, only pairs inverted by theta up to conjugation are kept, and
    the representative is the least such pair.
    """
    class_ids = np.array([G.class_id(a) for a in range(G.order)], dtype=np.int64)
    found: dict[tuple[int, ...], SigmaClass] = {}
    generating = 0
    for x, ys in enumerate(tqdm(_generating_partners(G), desc=f"pairs of {G.name}", disable=not progress)):
        if ys.size == 0:
            continue
        generating += int(ys.size)
        products = _products(G, x, ys)
        for y, xy in zip(ys.tolist(), products.tolist()):
            key = tuple(sorted({int(class_ids[x]), int(class_ids[y]), int(class_ids[xy])}))
            entry = found.get(key)
            if entry is not None:
                entry.pairs += 1
                continue
            if theta is not None and _is_real_pair(G, x, y, theta, class_ids) is None:
                continue
            s = sigma(G, x, y)
            found[key] = SigmaClass(key, (x, y), s.bits(), s.size)
    # equal Sigma-sets from different class keys collapse to the first one
    unique: dict[int, SigmaClass] = {}
    for entry in found.values():
        kept = unique.setdefault(entry.bits, entry)
        if kept is not entry:
            kept.pairs += entry.pairs
    return list(unique.values()), generating


def _scan(bits: list[int], start: int, stop: int) -> tuple[int, int] | None:
    """First (i, j), i in [start, stop) and j > i, whose Sigma-sets meet only in the identity"""
    for i in range(start, stop):
        b = bits[i]
        for j in range(i + 1, len(bits)):
            if b & bits[j] == 1:
                return i, j
    return None


def disjoint_sigma_pair(classes: list[SigmaClass], jobs: int = 1) -> tuple[int, int] | None:
    """Lexicographically least disjoint pair of classes, independent of the number of workers"""
    bits = [c.bits for c in classes]
    if len(bits) < 2:
        return None
    if jobs <= 1:
        return _scan(bits, 0, len(bits))
    bounds = np.linspace(0, len(bits), num=min(jobs * 4, len(bits)) + 1, dtype=int)
    results = Parallel(n_jobs=jobs)(
        delayed(_scan)(bits, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo)
    hits = [r for r in results if r is not None]
    return min(hits) if hits else None


def check_search_cap(G: FiniteGroup, mode: SearchMode | str, cap: int | None = None) -> None:
    mode = SearchMode(mode)
    if cap is None:
        cap = SEARCH_SETTINGS["PROVE_NONE_CAP"] if mode is SearchMode.prove_none else SEARCH_SETTINGS["FULL_SIGMA_CAP"]
    if G.order > cap:
        raise CapExceededError(f"order of {G.name} for {mode.value} search", G.order, cap)


@timing_decorator(logger)
def exhaustive_search(G: FiniteGroup, mode: SearchMode | str = SearchMode.find, theta: Homomorphism | None = None,
                      jobs: int | None = None, cap: int | None = None, progress: bool = False) -> SearchOutcome:
    mode = SearchMode(mode)
    jobs = SEARCH_SETTINGS["JOBS"] if jobs is None else jobs
    check_search_cap(G, mode, cap)
    if mode is SearchMode.find_strongly_real:
        if theta is None:
            raise ParameterError("find-strongly-real needs an automorphism")
        if not theta.is_automorphism:
            raise ParameterError("theta is not an automorphism")

    classes, generating = sigma_classes(G, theta if mode is SearchMode.find_strongly_real else None, progress)
    n = len(classes)
    hit = disjoint_sigma_pair(classes, jobs)
    if hit is None:
        checked = n * (n - 1) // 2
    else:
        i, j = hit
        checked = i * n - i * (i + 1) // 2 + (j - i)
    proof = NoneProof(G.order ** 2, generating, n, checked)

    certificate = None
    if hit is not None:
        first, second = classes[hit[0]], classes[hit[1]]
        certificate = check_beauville(G, make_pair(G, *first.representative), make_pair(G, *second.representative),
                                      use_lemma=False)
        if not certificate.beauville:
            raise AssertionError(f"disjoint Sigma-sets on {G.name} did not verify: {certificate.diagnostic}")
        if mode is SearchMode.find_strongly_real:
            certificate = check_strongly_real(G, certificate, theta, search_conjugators=True)
            if not certificate.strongly_real:
                raise AssertionError(f"real pairs on {G.name} did not verify: {certificate.diagnostic}")
        logger.info(f"{G.name}: {mode.value} found {first.representative} and {second.representative}")
    else:
        logger.info(f"{G.name}: no structure among {n} Sigma-sets from {generating} generating pairs")
    return SearchOutcome(mode, G.name, certificate, proof, classes)
