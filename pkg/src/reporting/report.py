"""Machine-readable reports.

Every command answers with one JSON document. Orders are decimal strings and
the determinism hash covers everything except the timing fields, so two runs
on the same input hash identically.
"""
from __future__ import annotations

import hashlib
from typing import Any

import orjson
from pydantic import BaseModel, ConfigDict, Field

from ..beauville.lifting import LiftVerdict
from ..beauville.search import SearchMode, SearchOutcome, check_search_cap, exhaustive_search
from ..beauville.structures import BeauvilleCertificate, GenPair
from ..groups.finite_group import FiniteGroup
from ..groups.homomorphism import Homomorphism
from ..groups.subgroups import NormalSeries, nilpotency_class
from ..utils.cache import ResultCache
from ..utils.config import TOOL_VERSION

TIMING_FIELDS = ("elapsed_ms", "determinism_hash")


class GroupInfo(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    order: str
    exponent: str
    nilpotency_class: int | None = Field(default=None, alias="class")


class Report(BaseModel):
    version: str = TOOL_VERSION
    command: list[str]
    group: GroupInfo | None = None
    certificates: list[dict[str, Any]] = Field(default_factory=list)
    input_hashes: dict[str, str] = Field(default_factory=dict)
    determinism_hash: str = ""
    elapsed_ms: float = 0.0

    def payload(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")

    def seal(self) -> Report:
        stable = {k: v for k, v in self.payload().items() if k not in TIMING_FIELDS}
        self.determinism_hash = hashlib.sha256(orjson.dumps(stable, option=orjson.OPT_SORT_KEYS)).hexdigest()
        return self

    def to_json(self) -> bytes:
        return orjson.dumps(self.payload(), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS)


def text_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def group_info(G: FiniteGroup) -> GroupInfo:
    cls = nilpotency_class(G) if G.prime is not None or G.order == 1 else None
    return GroupInfo(name=G.name, order=str(G.order), exponent=str(G.exponent()), nilpotency_class=cls)


def pair_payload(G: FiniteGroup, pair: GenPair) -> dict[str, Any]:
    return {
        "x": G.format_element(pair.x),
        "y": G.format_element(pair.y),
        "signature": list(pair.signature),
        "generating": pair.generating,
    }


def certificate_payload(G: FiniteGroup, cert: BeauvilleCertificate) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "kind": "beauville",
        "pair1": pair_payload(G, cert.pair1),
        "pair2": pair_payload(G, cert.pair2),
        "beauville": cert.beauville,
        "intersection_witness": (G.format_element(cert.intersection_witness)
                                 if cert.intersection_witness is not None else None),
        "diagnostic": cert.diagnostic,
        "sigma_sizes": list(cert.sigma_sizes) if cert.sigma_sizes else None,
        "lemma_pairs": cert.lemma_pairs,
        "strongly_real": cert.strongly_real,
    }
    if cert.conjugators is not None:
        payload["conjugators"] = [G.format_element(g) for g in cert.conjugators]
    if cert.automorphism is not None:
        payload["automorphism"] = {G.presentation.names[i]: G.format_element(img)
                                   for i, img in enumerate(cert.automorphism.pc_images)}
    return payload


def search_payload(G: FiniteGroup, outcome: SearchOutcome) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "kind": "search",
        "mode": outcome.mode.value,
        "found": outcome.found,
        "ordered_pairs": outcome.proof.ordered_pairs,
        "generating_pairs": outcome.proof.generating_pairs,
        "distinct_sigma": outcome.proof.distinct_sigma,
        "sigma_pairs_checked": outcome.proof.sigma_pairs_checked,
    }
    if outcome.certificate is not None:
        payload["certificate"] = certificate_payload(G, outcome.certificate)
    return payload


def series_payload(series: NormalSeries) -> dict[str, Any]:
    return {
        "kind": "series",
        "terms": [
            {"label": label, "order": str(term.size), "normal": term.normal, "theta_invariant": inv}
            for term, label, inv in zip(series.terms, series.labels, series.invariant)
        ],
        "indices": [str(i) for i in series.indices],
    }


def lift_payload(verdict: LiftVerdict, label: str) -> dict[str, Any]:
    return {
        "kind": "lift",
        "normal": label,
        "lifts": verdict.lifts,
        "quotient_order": str(verdict.quotient_order),
        "quotient_beauville": verdict.quotient_beauville,
        "orders_preserved": verdict.orders_preserved,
        "direct": verdict.direct,
        "reason": verdict.reason,
    }


def cached_search(G: FiniteGroup, pcp_text: str, mode: SearchMode | str, theta: Homomorphism | None = None,
                  jobs: int | None = None, cap: int | None = None, progress: bool = False,
                  cache: ResultCache | None = None) -> dict[str, Any]:
    """Search payload for G, reused from the cache when the same presentation was searched before"""
    mode = SearchMode(mode)
    check_search_cap(G, mode, cap)
    if cache is not None:
        entry = cache.load_search(pcp_text, mode.value)
        if entry is not None:
            return entry["payload"]
    outcome = exhaustive_search(G, mode, theta=theta, jobs=jobs, cap=cap, progress=progress)
    payload = search_payload(G, outcome)
    if cache is not None:
        cache.store_search(pcp_text, mode.value, payload,
                           [c.bits for c in outcome.sigma_classes], [c.size for c in outcome.sigma_classes])
    return payload
