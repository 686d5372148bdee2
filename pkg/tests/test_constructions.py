from math import comb

import pytest

from src.constructions import (build_abelian, build_case_i, build_case_iii, build_family, full_refinement,
                               load_paper_group, refinement_series, weight_commutators)
from src.constructions.refinement import lower_term
from src.groups import frattini
from src.pc import format_document
from src.utils.errors import ParameterError


def test_case_i_group(g51, g71):
    assert g51.name == "case_i_5_1"
    assert g51.group.order == 125
    assert g71.group.order == 343
    assert g51.family == "case-i"


def test_class_three_groups(g31, g22):
    assert g31.group.order == 243
    assert g22.group.order == 128
    G = g31.group
    assert G.element_order(G.mul(g31.x, g31.y)) == 9
    G = g22.group
    assert G.element_order(G.mul(g22.x, g22.y)) == 4


def test_negative_group(neg1):
    assert neg1.name == "negative_3_1"
    assert neg1.group.order == 81
    assert neg1.theta is not None


def test_abelian_groups():
    c6 = build_abelian(6)
    assert c6.group.order == 36
    assert c6.group.element_order(c6.x) == 6
    assert c6.group.prime is None
    assert build_abelian(9).group.exponent() == 9


@pytest.mark.parametrize("kwargs", [
    {"family": "case-i", "p": 3, "k": 1},
    {"family": "case-i", "p": 6, "k": 1},
    {"family": "case-ii", "p": 5, "k": 1},
    {"family": "case-iii", "k": 1},
    {"family": "abelian"},
    {"family": "abelian", "n": 1},
    {"family": "dihedral", "k": 1},
])
def test_build_family_rejects_bad_parameters(kwargs):
    with pytest.raises(ParameterError):
        build_family(**kwargs)


def test_build_family_dispatch():
    assert build_family("case-iii", k=2).group.order == 128
    assert build_family("abelian", n=5).group.order == 25


def test_document_round_trip_keeps_distinguished_generators(g31):
    text = format_document(g31.document())
    loaded = load_paper_group(text)
    assert loaded.family == "case-ii"
    assert loaded.params == {"p": 3, "k": 1}
    assert loaded.group.order == 243
    assert loaded.group.vector(loaded.x) == g31.group.vector(g31.x)
    assert loaded.theta is not None and loaded.theta.is_automorphism


def test_load_without_stanzas_uses_first_generators():
    loaded = load_paper_group("pcgroup c3xc3\ngen a order 3\ngen b order 3\n")
    assert loaded.family == "loaded"
    assert (loaded.x, loaded.y) == (loaded.group.generator(0), loaded.group.generator(1))


def test_power_formula_in_class_three(g31, g22):
    for pg in (g31, g22):
        G = pg.group
        x, y, z, t, w = (pg.dist_gens[g] for g in "xyztw")
        xy = G.mul(x, y)
        for n in range(1, 2 * G.exponent() + 1):
            expected = G.identity
            for g, e in ((x, n), (y, n), (z, comb(n, 2)), (t, comb(n, 3)), (w, (n - 1) * n * (2 * n - 1) // 6)):
                expected = G.mul(expected, G.power(g, e))
            assert G.power(xy, n) == expected, (pg.name, n)


def test_commutator_with_powers_of_x(g31, g22):
    for pg in (g31, g22):
        G = pg.group
        x, y, z, t = (pg.dist_gens[g] for g in "xyzt")
        for i in range(1, G.exponent() + 1):
            assert G.comm(y, G.power(x, i)) == G.mul(G.power(z, i), G.power(t, comb(i, 2)))


def test_y_against_x_cubed(g22):
    G = g22.group
    z, t = g22.dist_gens["z"], g22.dist_gens["t"]
    assert G.comm(g22.y, G.power(g22.x, 3)) == G.mul(z, t)


def test_fourth_powers_multiply_in_case_iii(g22):
    G = g22.group
    fourth = [G.power(g, 4) for g in range(G.order)]
    assert all(fourth[G.mul(g, h)] == G.mul(fourth[g], fourth[h]) for g in range(G.order) for h in range(G.order))


def test_frattini_elements_do_not_change_cubes(g31):
    G = g31.group
    phi = frattini(G).members()
    assert all(G.power(G.mul(g, h), 3) == G.power(g, 3) for g in range(G.order) for h in phi)


def test_weight_commutators_order(g31):
    labels = [label for label, _ in weight_commutators(g31, 2)]
    assert labels == ["[x,x]", "[x,y]", "[y,x]", "[y,y]"]
    assert [label for label, _ in weight_commutators(g31, 1)] == ["x", "y"]


def test_refinement_between_third_and_fourth_terms(g31):
    series = refinement_series(g31, 3)
    assert series.orders == [9, 3, 1]
    t = g31.dist_gens["t"]
    assert t in series.terms[1]
    assert all(series.invariant)
    assert series.check() == []


@pytest.mark.parametrize("builder, args, weight, orders", [
    (build_case_i, (5, 1), 1, [125, 25, 5]),
    (build_case_i, (5, 1), 2, [5, 1]),
    (build_case_iii, (2,), 2, [8, 4]),
    (build_case_iii, (2,), 3, [4, 2, 1]),
])
def test_refinement_steps_have_prime_index(builder, args, weight, orders):
    pg = builder(*args)
    series = refinement_series(pg, weight)
    assert series.orders == orders
    assert all(i == pg.prime for i in series.indices)
    assert all(series.invariant)


def test_refinement_rejects_weight_zero(g31):
    with pytest.raises(ParameterError):
        refinement_series(g31, 0)


def test_full_refinement_is_a_composition_series(g31):
    series = full_refinement(g31)
    assert series.orders == [243, 81, 27, 9, 3, 1]
    assert series.check() == []


def test_lower_term_past_the_end(g31):
    assert lower_term(g31, 7).size == 1


@pytest.mark.slow
def test_refinement_of_larger_class_three_group():
    from src.constructions import build_case_ii
    pg = build_case_ii(2)
    series = refinement_series(pg, 2)
    assert series.orders == [729, 243, 81]
    assert all(series.invariant)
