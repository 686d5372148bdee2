import orjson
import pytest

from src.beauville import SearchMode, check_beauville, exhaustive_search, paper_structure
from src.pc import format_document
from src.reporting import Report, certificate_payload, group_info, search_payload
from src.reporting import report as report_module
from src.reporting.report import cached_search
from src.reporting.reproduce import (check_beyond_presentations, check_catanese, check_identities,
                                     check_negative_group, check_nq_cross_validation, check_refinement_series,
                                     check_signatures, check_special_quotients, check_strongly_real_structures)
from src.utils.cache import ResultCache, presentation_key
from src.utils.errors import CapExceededError


def _report(g51, elapsed):
    s = paper_structure(g51, 1, 3)
    report = Report(command=["bforge", "verify"], group=group_info(g51.group))
    report.certificates.append(certificate_payload(g51.group, check_beauville(g51.group, s.pair1, s.pair2)))
    report.elapsed_ms = elapsed
    return report.seal()


def test_determinism_hash_ignores_timing(g51):
    assert _report(g51, 1.0).determinism_hash == _report(g51, 250.0).determinism_hash


def test_determinism_hash_tracks_content(g51):
    report = _report(g51, 1.0)
    before = report.determinism_hash
    report.command.append("--strong")
    assert report.seal().determinism_hash != before


def test_report_json_uses_string_orders(g51):
    payload = orjson.loads(_report(g51, 1.0).to_json())
    assert payload["group"] == {"name": "case_i_5_1", "order": "125", "exponent": "5", "class": 2}
    cert = payload["certificates"][0]
    assert cert["beauville"] is True
    assert cert["pair1"]["signature"] == [5, 5, 5]


def test_search_payload_counts(c5):
    payload = search_payload(c5.group, exhaustive_search(c5.group, SearchMode.find))
    assert payload["found"] is True
    assert payload["ordered_pairs"] == 625
    assert payload["certificate"]["intersection_witness"] is None


def test_group_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path)
    text = "pcgroup c3xc3\ngen a order 3\ngen b order 3\n"
    key = cache.store_group(text)
    assert key == presentation_key(text)
    assert cache.load_group(key) == text
    assert cache.load_group("0" * 16) is None


def test_search_cache_round_trip(tmp_path, c5):
    cache = ResultCache(tmp_path)
    text = format_document(c5.document())
    first = cached_search(c5.group, text, SearchMode.prove_none, cache=cache)
    entry = cache.load_search(text, "prove-none")
    assert entry["payload"] == first
    assert len(entry["sigma"]["digests"]) == first["distinct_sigma"]
    assert cache.load_search(text, "find") is None


def test_search_cache_ignores_other_presentations(tmp_path, c5):
    cache = ResultCache(tmp_path)
    text = format_document(c5.document())
    cached_search(c5.group, text, SearchMode.find, cache=cache)
    assert cache.load_search(text + "\n", "find") is None


def test_search_cache_ignores_corrupt_entries(tmp_path):
    cache = ResultCache(tmp_path)
    text = "pcgroup c3xc3\ngen a order 3\ngen b order 3\n"
    path = cache.store_search(text, "find", {"found": False, "distinct_sigma": 2}, [0b1011, 0b11], [3, 2])
    assert cache.load_search(text, "find")["sigma"]["sizes"] == [3, 2]
    path.write_text("{not json")
    assert cache.load_search(text, "find") is None
    cache.store_search(text, "find", {"found": False, "distinct_sigma": 5}, [0b1011], [3])
    assert cache.load_search(text, "find") is None


def test_cached_search_reuses_stored_outcome(tmp_path, c5, monkeypatch):
    cache = ResultCache(tmp_path)
    text = format_document(c5.document())
    first = cached_search(c5.group, text, SearchMode.find, cache=cache)

    def fail(*args, **kwargs):
        raise AssertionError("search ran again")

    monkeypatch.setattr(report_module, "exhaustive_search", fail)
    assert cached_search(c5.group, text, SearchMode.find, cache=cache) == first


def test_cached_search_checks_cap_before_cache(tmp_path, c5):
    cache = ResultCache(tmp_path)
    text = format_document(c5.document())
    cached_search(c5.group, text, SearchMode.find, cache=cache)
    with pytest.raises(CapExceededError):
        cached_search(c5.group, text, SearchMode.find, cap=10, cache=cache)


def test_catanese_check():
    result = check_catanese()
    assert result.passed, result.details


@pytest.mark.slow
def test_special_quotients_and_signatures():
    for check in (check_special_quotients, check_signatures):
        result = check()
        assert result.passed, result.details


def test_negative_group_check_reuses_cache(tmp_path):
    cache = ResultCache(tmp_path)
    first = check_negative_group(cache)
    assert first.passed, first.details
    assert list(tmp_path.glob("*.prove-none.json"))
    assert check_negative_group(cache).details == first.details


@pytest.mark.slow
@pytest.mark.parametrize("check", [check_nq_cross_validation, check_strongly_real_structures,
                                   check_refinement_series, check_beyond_presentations, check_identities])
def test_reproduction_checks_pass(check):
    result = check()
    assert result.passed, result.details
