import orjson
import pytest
from typer.testing import CliRunner

from src.main import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def invoke(*args):
    result = runner.invoke(app, list(args))
    report = orjson.loads(result.stdout) if result.stdout.strip() else None
    return result, report


def construct(family, **params):
    args = ["construct", "--family", family]
    for key, value in params.items():
        args += [f"--{key}", str(value)]
    result, report = invoke(*args)
    assert result.exit_code == 0, result.output
    return report


def test_construct_writes_presentation(workdir):
    report = construct("case-i", p=5, k=1)
    assert report["group"]["order"] == "125"
    assert report["group"]["class"] == 2
    assert (workdir / "case_i_5_1.pcp").exists()
    assert len(report["determinism_hash"]) == 64


def test_construct_negative_group():
    assert construct("negative", p=3, k=1)["group"]["order"] == "81"


def test_construct_rejects_small_prime():
    result, _ = invoke("construct", "--family", "case-i", "--p", "3", "--k", "1")
    assert result.exit_code == 2


def test_nq_quotient():
    result, report = invoke("nq", "--p", "5", "--k", "1", "--class", "2")
    assert result.exit_code == 0, result.output
    assert report["group"]["order"] == "125"
    assert report["certificates"][0]["triangle"] == "T(5,5,5)"


def test_verify_identical_pairs_fails_with_witness():
    construct("case-i", p=5, k=1)
    result, report = invoke("verify", "--group", "case_i_5_1.pcp", "--pair1", "x;y", "--pair2", "x;y")
    assert result.exit_code == 1
    cert = report["certificates"][0]
    assert cert["beauville"] is False
    assert cert["intersection_witness"] == "x"


@pytest.mark.parametrize("family, params", [("case-ii", {"k": 1}), ("case-iii", {"k": 2})])
def test_verify_strongly_real_paper_structure(family, params):
    name = construct(family, **params)["group"]["name"]
    result, report = invoke("verify", "--group", f"{name}.pcp", "--paper-structure", "--n1", "1", "--n2", "2",
                            "--strong")
    assert result.exit_code == 0, result.output
    cert = report["certificates"][0]
    assert cert["strongly_real"] is True
    assert cert["conjugators"] is not None


def test_verify_word_pairs():
    construct("abelian", n=5)
    result, _ = invoke("verify", "--group", "abelian_5.pcp", "--pair1", "x;y", "--pair2", "x*y^2;x^3*y^4")
    assert result.exit_code == 0, result.output


def test_verify_needs_pairs():
    construct("case-i", p=5, k=1)
    result, _ = invoke("verify", "--group", "case_i_5_1.pcp")
    assert result.exit_code == 2


def test_verify_rejects_bad_words():
    construct("case-i", p=5, k=1)
    result, _ = invoke("verify", "--group", "case_i_5_1.pcp", "--pair1", "x^;y", "--pair2", "x;y")
    assert result.exit_code == 2


def test_reports_hash_deterministically():
    construct("case-i", p=5, k=1)
    args = ("verify", "--group", "case_i_5_1.pcp", "--paper-structure", "--n1", "1", "--n2", "3")
    first, second = invoke(*args)[1], invoke(*args)[1]
    assert first["determinism_hash"] == second["determinism_hash"]


def test_search_prove_none_on_negative_group(workdir):
    construct("negative", p=3, k=1)
    result, report = invoke("search", "--group", "negative_3_1.pcp", "--mode", "prove-none")
    assert result.exit_code == 0, result.output
    assert report["certificates"][0]["found"] is False
    assert list((workdir / ".bforge").glob("*.prove-none.json"))


def test_search_finds_abelian_structure():
    construct("abelian", n=5)
    result, report = invoke("search", "--group", "abelian_5.pcp", "--mode", "find")
    assert result.exit_code == 0, result.output
    assert report["certificates"][0]["certificate"]["beauville"] is True


def test_search_respects_order_cap():
    construct("case-i", p=5, k=1)
    result, _ = invoke("search", "--group", "case_i_5_1.pcp", "--max-order", "100")
    assert result.exit_code == 3


def test_series_between_third_and_fourth_terms():
    construct("case-ii", k=1)
    result, report = invoke("series", "--group", "case_ii_3_1.pcp", "--from", "3", "--to", "4")
    assert result.exit_code == 0, result.output
    terms = report["certificates"][0]["terms"]
    assert [t["order"] for t in terms] == ["9", "3", "1"]
    assert all(t["theta_invariant"] for t in terms)


def test_reproduce_rejects_unknown_checks():
    result, _ = invoke("reproduce", "--only", "nonsense")
    assert result.exit_code == 2


def test_search_reuses_cached_outcome(monkeypatch):
    construct("negative", p=3, k=1)
    args = ("search", "--group", "negative_3_1.pcp", "--mode", "prove-none")
    first = invoke(*args)[1]

    def fail(*a, **kw):
        raise AssertionError("search ran again")

    monkeypatch.setattr("src.reporting.report.exhaustive_search", fail)
    result, second = invoke(*args)
    assert result.exit_code == 0, result.output
    assert second["determinism_hash"] == first["determinism_hash"]


def test_search_without_cache_writes_nothing(workdir):
    construct("abelian", n=5)
    result, _ = invoke("search", "--group", "abelian_5.pcp", "--no-cache")
    assert result.exit_code == 0, result.output
    assert not list((workdir / ".bforge").glob("*.json"))


def test_verify_strong_without_inversion_still_reports(workdir):
    # x of order 9 with [y,x] = x^3, where inverting x and y is not an automorphism
    (workdir / "m27.pcp").write_text(
        "pcgroup m27\ngen x order 3 power z\ngen y order 3\ngen z order 3\ncomm y x = z\n")
    result, report = invoke("verify", "--group", "m27.pcp", "--pair1", "x;y", "--pair2", "x*y;y", "--strong")
    assert result.exit_code == 1
    cert = report["certificates"][0]
    assert cert["strongly_real"] is False
    assert "no inversion automorphism" in cert["diagnostic"]


@pytest.mark.slow
def test_reproduce_nq_cross_validation():
    result, report = invoke("reproduce", "--only", "nq-cross-validation", "--no-cache")
    assert result.exit_code == 0, result.output
    assert report["certificates"][0]["name"] == "nq-cross-validation"
    assert report["certificates"][0]["passed"] is True
