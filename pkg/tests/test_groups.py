import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.groups import (ElementSet, agemo, derived_subgroup, enumerate_group, frattini, hom_from_images, is_normal,
                        lower_central_series, nilpotency_class, normal_closure, quotient_group, subgroup_closure)
from src.constructions import build_abelian
from src.pc import build_presentation
from src.utils.errors import (CapExceededError, InconsistentPresentationError, NotNormalError,
                              NotSurjectiveError, NotWellDefinedError, ParameterError)


def test_identity_is_index_zero(g51):
    G = g51.group
    assert G.identity == 0
    assert G.vector(0) == (0, 0, 0)
    assert G.mul(0, g51.x) == g51.x


def test_orders_and_exponents(g51, g31, g22):
    assert (g51.group.order, g51.group.exponent()) == (125, 5)
    assert (g31.group.order, g31.group.exponent()) == (243, 9)
    assert (g22.group.order, g22.group.exponent()) == (128, 4)


def test_group_axioms_hold(g51, g22):
    assert g51.group.verify_axioms()
    assert g22.group.verify_axioms()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 242), st.integers(0, 242), st.integers(0, 242))
def test_multiplication_matches_collection(g31, a, b, c):
    G = g31.group
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    word = [(i, e) for i, e in enumerate(G.vector(a))] + [(i, e) for i, e in enumerate(G.vector(b))]
    assert G.element(tuple((i, e) for i, e in word if e)) == G.mul(a, b)


def test_inverse_and_negative_powers(g31):
    G = g31.group
    for a in range(0, G.order, 7):
        assert G.mul(a, G.inv(a)) == G.identity
        assert G.power(a, -2) == G.inv(G.power(a, 2))


def test_commutator_convention(g51):
    G = g51.group
    z = g51.dist_gens["z"]
    assert G.comm(g51.y, g51.x) == z
    assert G.conj(g51.y, g51.x) == G.mul(g51.y, z)


def test_xy_cubed_in_class_three(g31):
    G = g31.group
    t, w = g31.dist_gens["t"], g31.dist_gens["w"]
    assert G.power(G.mul(g31.x, g31.y), 3) == G.mul(t, G.power(w, 2))


def test_element_orders(g31):
    G = g31.group
    orders = G.element_orders()
    assert orders[G.identity] == 1
    assert orders[g31.x] == 3
    assert orders[G.mul(g31.x, g31.y)] == 9
    assert max(orders) == G.exponent()


def test_conjugacy_classes_partition_the_group(g51):
    G = g51.group
    classes = G.conjugacy_classes()
    assert sum(c.size for c in classes) == G.order
    # 5 central singletons and 24 classes of size 5
    assert sorted(c.size for c in classes) == [1] * 5 + [5] * 24


def test_conjugacy_class_is_shared(g51):
    G = g51.group
    cls = G.conjugacy_class(g51.x)
    assert all(G.class_id(a) == G.class_id(g51.x) for a in cls.members())
    assert G.cyclic_conjugates(g51.x) is G.cyclic_conjugates(cls.members()[-1])


def test_subgroup_closure_and_normality(g51):
    G = g51.group
    H = subgroup_closure(G, [g51.x])
    assert H.size == 5
    assert not is_normal(G, H)
    assert is_normal(G, normal_closure(G, [g51.x]))


def test_normal_closure_of_xy_cubed(g31):
    G = g31.group
    N = normal_closure(G, [G.power(G.mul(g31.x, g31.y), 3)])
    assert N.size == 3


def test_frattini_and_derived(g22, g51):
    assert frattini(g22.group).size == 32
    assert derived_subgroup(g51.group).size == 5
    with pytest.raises(ParameterError):
        frattini(build_abelian(6).group)


def test_agemo(g22):
    G = g22.group
    assert agemo(G, 0).size == G.order
    assert agemo(G, 2).size == 1
    assert agemo(G, 1) <= frattini(G)


def test_lower_central_series(g31, g51):
    assert lower_central_series(g31.group).orders == [243, 27, 9, 1]
    assert nilpotency_class(g31.group) == 3
    assert nilpotency_class(g51.group) == 2


def test_element_set_operations(g51):
    G = g51.group
    a = ElementSet.from_indices(G, [0, 1, 2])
    b = ElementSet.from_indices(G, [0, 2, 3])
    assert (a & b).members() == [0, 2]
    assert ElementSet.trivial(G) < a
    assert (a & b).smallest_nontrivial() == 2
    assert a.bits() == 0b111


def test_quotient_by_centre(g51):
    G = g51.group
    Z = subgroup_closure(G, [g51.dist_gens["z"]])
    Q, projection = quotient_group(G, Z)
    assert Q.order == 25
    assert projection(g51.dist_gens["z"]) == Q.identity
    assert projection.check_multiplicative()


def test_quotient_errors(g51):
    G = g51.group
    with pytest.raises(NotNormalError):
        quotient_group(G, subgroup_closure(G, [g51.x]))
    with pytest.raises(ParameterError):
        quotient_group(G, ElementSet.whole(G))


def test_homomorphism_checks_relations(g51, c5):
    # x -> x, y -> y kills z and lands in C5 x C5
    hom = hom_from_images(g51.group, c5.group, [g51.x, g51.y], [c5.x, c5.y])
    assert hom.image_size() == 25
    assert hom.kernel_set().size == 5
    with pytest.raises(NotWellDefinedError):
        hom_from_images(c5.group, g51.group, [c5.x, c5.y], [g51.x, g51.y])


def test_homomorphism_surjectivity(g51, c5):
    with pytest.raises(NotSurjectiveError):
        hom_from_images(g51.group, c5.group, [g51.x, g51.y], [c5.x, c5.x])
    hom = hom_from_images(g51.group, c5.group, [g51.x, g51.y], [c5.x, c5.x], require_surjective=False)
    assert hom.image_size() == 5


def test_theta_is_an_automorphism(g51):
    theta = g51.theta
    assert theta.is_automorphism
    assert theta(g51.x) == g51.group.inv(g51.x)


def test_enumerate_group_enforces_cap_and_consistency():
    big = build_presentation("big", [("x", 7), ("y", 7), ("z", 7)])
    with pytest.raises(CapExceededError):
        enumerate_group(big, cap=100)
    bad = build_presentation("bad", [("x", 5), ("y", 25), ("z", 25)], comms={("y", "x"): [("z", 1)]})
    with pytest.raises(InconsistentPresentationError):
        enumerate_group(bad)
