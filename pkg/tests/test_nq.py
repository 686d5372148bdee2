import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.constructions import from_layered
from src.groups.homomorphism import hom_from_images
from src.groups.subgroups import subgroup_closure
from src.nq import (Diagonalization, TailArithmetic, TriangleParams, extend_class, initial_class_quotient,
                    kernel_basis, triangle_quotient)
from src.pc import Collector, build_presentation
from src.utils.errors import CapExceededError, ParameterError


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_diagonal_of_single_relation():
    diag = Diagonalization([[4, 6]], 2).run()
    assert diag.diagonal == [2, 0]
    assert diag.coordinates([4, 6]) == [0, 0]
    assert diag.coordinates([2, 3]) != [0, 0]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=4))
def test_column_transform_is_unimodular(rows):
    diag = Diagonalization(rows, 3).run()
    identity = [[int(i == j) for j in range(3)] for i in range(3)]
    assert _matmul(diag.Q, diag.Q_inv) == identity
    for row in rows:
        # every relation vanishes in the quotient it presents
        assert all(c == 0 for c, d in zip(diag.coordinates(row), diag.diagonal) if d != 1)


def test_diagonal_preserves_determinant():
    diag = Diagonalization([[2, 1], [0, 4]], 2).run()
    assert diag.diagonal[0] * diag.diagonal[1] == 8


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3), min_size=1, max_size=4))
def test_diagonal_is_a_divisibility_chain(rows):
    diag = Diagonalization(rows, 3).run()
    d = diag.diagonal
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_diagonal_of_mixed_relations():
    # Z^3 / <(2,0,0), (0,3,0)> is C6 x Z
    diag = Diagonalization([[2, 0, 0], [0, 3, 0]], 3).run()
    assert diag.diagonal == [1, 6, 0]
    assert _matmul(diag.Q, diag.Q_inv) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_kernel_basis_mod_three():
    basis = kernel_basis([[1], [1]], [3])
    assert len(basis) == 2
    for c0, c1 in basis:
        assert (c0 + c1) % 3 == 0
    (a, b), (c, d) = basis
    assert abs(a * d - b * c) == 3


def test_tail_arithmetic_tracks_relations():
    P = build_presentation("c3xc3", [("a", 3), ("b", 3)])
    arith = TailArithmetic(Collector(P))
    a = arith.unit(0)
    cube = arith.power(a, 3)
    assert not any(cube[0])
    # a^3 used the power relation of a once
    assert cube[1][0] == 1
    assert arith.mul(a, arith.inv(a))[0] == (0, 0)


def test_triangle_params_validation():
    assert TriangleParams(3, 1).r == 9
    assert TriangleParams(5, 1).r == 5
    assert TriangleParams(2, 2).label == "T(4,4,4)"
    for bad in ((4, 1, None), (5, 0, None), (2, 1, None), (3, 1, 6), (5, 2, 5)):
        with pytest.raises(ParameterError):
            TriangleParams(*bad)


def test_initial_quotient_is_abelianization():
    lp = initial_class_quotient(TriangleParams(5, 1))
    assert lp.order == 25
    assert lp.weights == (1, 1)


@pytest.mark.parametrize("p, k, r, cls, order", [
    (5, 1, None, 2, 125),
    (7, 1, None, 2, 343),
    (3, 1, None, 3, 243),
    (2, 2, None, 3, 128),
    (3, 1, 3, 3, 81),
])
def test_triangle_quotient_orders(p, k, r, cls, order):
    lp = triangle_quotient(TriangleParams(p, k, r), cls)
    assert lp.order == order
    assert lp.nilpotency_class == cls
    assert lp.layer(1) == [0, 1]


def test_triangle_quotient_images_have_the_right_orders():
    pg = from_layered(triangle_quotient(TriangleParams(3, 1), 3))
    G = pg.group
    assert (G.element_order(pg.x), G.element_order(pg.y), G.element_order(G.mul(pg.x, pg.y))) == (3, 3, 9)
    assert pg.theta.is_automorphism


def test_extend_class_adds_one_layer():
    tp = TriangleParams(5, 1)
    lp = extend_class(initial_class_quotient(tp), tp)
    assert lp.nilpotency_class == 2
    assert lp.layer(2) == [2]
    assert lp.presentation.names[2] == "w2_1"


def test_class_bound_limits(monkeypatch):
    with pytest.raises(ParameterError):
        triangle_quotient(TriangleParams(5, 1), 0)
    from src.utils import config
    monkeypatch.setitem(config.NQ_SETTINGS, "MAX_ORDER", 100)
    with pytest.raises(CapExceededError):
        triangle_quotient(TriangleParams(5, 1), 2)


@pytest.mark.parametrize("p, k, r, cls", [(5, 1, None, 2), (3, 1, None, 3), (2, 2, None, 3)])
def test_class_quotient_maps_onto_previous_with_layer_kernel(p, k, r, cls):
    tp = TriangleParams(p, k, r)
    lp = triangle_quotient(tp, cls)
    upper, lower = from_layered(lp), from_layered(triangle_quotient(tp, cls - 1))
    G = upper.group
    hom = hom_from_images(G, lower.group, [upper.x, upper.y], [lower.x, lower.y])
    layer = subgroup_closure(G, [G.generator(i) for i in lp.layer(cls)])
    assert hom.kernel_set() == layer
    assert G.order == lower.group.order * layer.size


def _generator_orders(pg):
    G = pg.group
    return G.element_order(pg.x), G.element_order(pg.y), G.element_order(G.mul(pg.x, pg.y))


@pytest.mark.parametrize("p, k, r", [(3, 1, None), (2, 2, None), (3, 1, 3)])
def test_generator_orders_never_drop(p, k, r):
    tp = TriangleParams(p, k, r)
    orders = [_generator_orders(from_layered(triangle_quotient(tp, c))) for c in (1, 2, 3)]
    for before, after in zip(orders, orders[1:]):
        assert all(b <= a for b, a in zip(before, after))
    assert all(o <= bound for o, bound in zip(orders[-1], (tp.q, tp.q, tp.r)))


@pytest.mark.slow
@pytest.mark.parametrize("p, k, r, order", [(3, 1, 9, 2187), (2, 2, None, 1024)])
def test_class_four_quotient_orders(p, k, r, order):
    tp = TriangleParams(p, k, r)
    lp = triangle_quotient(tp, 4)
    assert lp.nilpotency_class == 4
    assert lp.order == order
    assert lp.order > triangle_quotient(tp, 3).order
