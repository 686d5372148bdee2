import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.beauville import (SearchMode, check_beauville, check_strongly_real, exhaustive_search, is_generating_pair,
                           lift_check, make_pair, paper_structure, regular_criterion, sigma)
from src.beauville.structures import orders_preserve_applies
from src.constructions import build_abelian
from src.groups import ElementSet, hom_from_images, subgroup_closure
from src.utils.errors import CapExceededError, ParameterError


def test_sigma_of_identity_is_trivial(g51):
    assert sigma(g51.group, 0, 0).is_trivial()


def test_sigma_sizes(g51, c5):
    assert sigma(g51.group, g51.x, g51.y).size == 61
    assert sigma(c5.group, c5.x, c5.y).size == 13


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 124), st.integers(0, 124))
def test_sigma_is_symmetric_and_theta_invariant(g51, x, y):
    G, theta = g51.group, g51.theta
    s = sigma(G, x, y)
    assert s == sigma(G, y, x)
    image = ElementSet.from_indices(G, [theta(a) for a in s.members()])
    assert image == sigma(G, theta(x), theta(y))


def test_sigma_is_closed_under_conjugation_and_powers(g31):
    G = g31.group
    s = sigma(G, g31.x, g31.y)
    for a in s.members()[::5]:
        assert G.power(a, 2) in s
        assert G.conj(a, g31.y) in s


def test_generating_pairs(g51):
    G = g51.group
    z = g51.dist_gens["z"]
    assert is_generating_pair(G, g51.x, g51.y)
    assert not is_generating_pair(G, g51.x, g51.x)
    assert not is_generating_pair(G, g51.x, G.mul(g51.x, z))


def test_generating_pairs_outside_p_groups():
    c6 = build_abelian(6)
    assert is_generating_pair(c6.group, c6.x, c6.y)
    assert not is_generating_pair(c6.group, c6.x, c6.group.power(c6.x, 5))


def test_abelian_beauville_structure(c5):
    G = c5.group
    p1 = make_pair(G, c5.x, c5.y)
    p2 = make_pair(G, G.mul(c5.x, G.power(c5.y, 2)), G.mul(G.power(c5.x, 3), G.power(c5.y, 4)))
    cert = check_beauville(G, p1, p2)
    assert cert.beauville
    assert cert.intersection_witness is None


def test_identical_pairs_collide_at_x(g51):
    G = g51.group
    pair = make_pair(G, g51.x, g51.y)
    cert = check_beauville(G, pair, pair)
    assert not cert.beauville
    assert cert.intersection_witness == g51.x


def test_non_generating_pair_is_diagnosed(g51):
    G = g51.group
    cert = check_beauville(G, make_pair(G, g51.x, g51.x), make_pair(G, g51.x, g51.y))
    assert not cert.beauville
    assert cert.diagnostic.startswith("not generating")


def test_check_is_symmetric(g51):
    G = g51.group
    s = paper_structure(g51, 1, 3)
    assert check_beauville(G, s.pair1, s.pair2).beauville == check_beauville(G, s.pair2, s.pair1).beauville


def test_lemma_fast_path_agrees_with_direct_check(g31):
    s = paper_structure(g31, 1, 2)
    fast = check_beauville(g31.group, s.pair1, s.pair2)
    slow = check_beauville(g31.group, s.pair1, s.pair2, use_lemma=False)
    assert fast.beauville == slow.beauville


def test_orders_preserve_hypotheses(g51):
    G = g51.group
    assert orders_preserve_applies(G, g51.x, g51.y)
    assert not orders_preserve_applies(G, g51.x, g51.x)


@pytest.mark.parametrize("fixture, n1, n2", [("g51", 1, 3), ("g71", 1, 3), ("g31", 1, 2), ("g22", 1, 2)])
def test_strongly_real_structures(request, fixture, n1, n2):
    pg = request.getfixturevalue(fixture)
    G = pg.group
    s = paper_structure(pg, n1, n2)
    assert not s.off_recipe
    cert = check_strongly_real(G, check_beauville(G, s.pair1, s.pair2, use_lemma=False), pg.theta)
    assert cert.beauville
    assert cert.strongly_real
    assert cert.conjugators == (G.identity, G.identity)


def test_identity_map_is_not_a_real_automorphism(g51):
    G = g51.group
    identity = hom_from_images(G, G, [g51.x, g51.y], [g51.x, g51.y])
    s = paper_structure(g51, 1, 3)
    cert = check_strongly_real(G, check_beauville(G, s.pair1, s.pair2), identity, search_conjugators=True)
    assert cert.beauville
    assert cert.strongly_real is False


def test_strongly_real_needs_an_automorphism(g51, c5):
    G = g51.group
    onto = hom_from_images(G, c5.group, [g51.x, g51.y], [c5.x, c5.y])
    s = paper_structure(g51, 1, 3)
    with pytest.raises(ParameterError):
        check_strongly_real(G, check_beauville(G, s.pair1, s.pair2), onto)


def test_signatures(g51, g31):
    s = paper_structure(g51, 1, 3)
    assert s.pair1.signature == (5, 5, 5)
    assert s.pair2.signature == (5, 5, 5)
    assert paper_structure(g31, 1, 2).pair1.signature == (3, 3, 9)


def test_both_pairs_generate_in_case_iii(g22):
    s = paper_structure(g22, 1, 2)
    assert s.pair1.generating and s.pair2.generating


def test_off_recipe_is_flagged(g51):
    s = paper_structure(g51, 2, 3)
    assert s.off_recipe
    assert "not met" in s.note


def test_negative_group_recipe_fails(neg1):
    s = paper_structure(neg1, 1, 2)
    assert not check_beauville(neg1.group, s.pair1, s.pair2).beauville


def test_regular_criterion(g51, g31):
    verdict = regular_criterion(g51.group)
    assert verdict.beauville
    assert verdict.automatic_regularity
    assert verdict.agemo_size == 125
    assert not regular_criterion(g31.group).beauville


def test_search_finds_abelian_structure(c5):
    outcome = exhaustive_search(c5.group, SearchMode.find)
    assert outcome.found
    assert outcome.certificate.beauville
    assert outcome.proof.ordered_pairs == 625


def test_search_finds_strongly_real_abelian_structure(c5):
    outcome = exhaustive_search(c5.group, SearchMode.find_strongly_real, theta=c5.theta)
    assert outcome.found
    assert outcome.certificate.strongly_real


def test_prove_none_on_negative_group(neg1):
    outcome = exhaustive_search(neg1.group, SearchMode.prove_none)
    assert not outcome.found
    proof = outcome.proof
    assert proof.ordered_pairs == 81 * 81
    assert 0 < proof.distinct_sigma <= proof.generating_pairs
    assert proof.sigma_pairs_checked == proof.distinct_sigma * (proof.distinct_sigma - 1) // 2


@pytest.mark.parametrize("n, expected", [(2, False), (3, False), (4, False), (5, True), (6, False), (7, True)])
def test_catanese_criterion(n, expected):
    assert exhaustive_search(build_abelian(n).group, SearchMode.find).found == expected


@pytest.mark.slow
@pytest.mark.parametrize("n, expected", [(8, False), (9, False), (11, True), (13, True)])
def test_catanese_criterion_larger(n, expected):
    assert exhaustive_search(build_abelian(n).group, SearchMode.find).found == expected


def test_search_is_independent_of_worker_count():
    G = build_abelian(7).group
    one = exhaustive_search(G, SearchMode.find, jobs=1)
    two = exhaustive_search(G, SearchMode.find, jobs=2)
    assert (one.certificate.pair1, one.certificate.pair2) == (two.certificate.pair1, two.certificate.pair2)


def test_search_caps(g51):
    with pytest.raises(CapExceededError):
        exhaustive_search(g51.group, SearchMode.prove_none, cap=100)
    with pytest.raises(ParameterError):
        exhaustive_search(g51.group, SearchMode.find_strongly_real)


def test_lift_check_order_condition(g22):
    G = g22.group
    N = subgroup_closure(G, [g22.dist_gens["w"]])
    s = paper_structure(g22, 1, 2)
    verdict = lift_check(N, s.pair1, s.pair2)
    assert verdict.orders_preserved
    assert verdict.quotient_order == 64
    if verdict.lifts:
        assert verdict.direct


def test_lift_check_through_trivial_quotient(g22):
    s = paper_structure(g22, 1, 2)
    assert not lift_check(ElementSet.whole(g22.group), s.pair1, s.pair2)


@pytest.mark.slow
def test_lift_agrees_with_direct_check_on_case_ii_k2():
    from src.constructions import build_case_ii
    pg = build_case_ii(2)
    G = pg.group
    N = subgroup_closure(G, [G.power(pg.dist_gens["t"], 3)])
    s = paper_structure(pg, 1, 2)
    verdict = lift_check(N, s.pair1, s.pair2)
    if verdict.lifts:
        assert check_beauville(G, s.pair1, s.pair2, use_lemma=False).beauville
