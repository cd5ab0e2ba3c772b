import pytest

from framedgc.graph import NotAdmissible, OrientedGraph, alpha, unit
from framedgc.linalg import GraphVector
from framedgc.ops import Delta, contract, d, delete, delta, differential, multiply, one, product

TRIPOD = OrientedGraph(3, 1, ((0, 3), (1, 3), (2, 3)))


def gv(n, *terms):
    out = GraphVector(n)
    for c, g in terms:
        out.add_graph(g, c)
    return out


def test_d_of_edge_is_zero():
    assert differential(alpha(2, (1, 2))) == 0


def test_d_of_tripod():
    # contracting edge p merges the internal vertex into external p, sign (-1)^p
    expected = gv(3, (-1, alpha(3, (1, 2), (1, 3))),
                  (1, alpha(3, (1, 2), (2, 3))),
                  (-1, alpha(3, (1, 3), (2, 3))))
    assert differential(TRIPOD) == expected


def test_contract_external_pair_is_zero():
    assert contract(alpha(3, (1, 2)), 0) is None


def test_contract_creating_double_edge_is_zero():
    # internal vertex 4 joined to 1, 2, 3 plus edge 1-2; contracting 4-1 doubles 1-2
    g = OrientedGraph(3, 1, ((0, 3), (1, 3), (2, 3), (0, 1)))
    assert contract(g, 0) is None
    assert contract(g, 2) is not None


def test_delta_examples():
    assert delta(alpha(2, (1, 2))) == GraphVector.from_graph(unit(2))
    assert delta(TRIPOD) == 0
    assert delta(alpha(3, (1, 2), (1, 3))) == gv(3, (1, alpha(3, (1, 3))),
                                                    (-1, alpha(3, (1, 2))))


def test_delete_leaving_bivalent_vertex_is_zero():
    assert delete(TRIPOD, 1) is None


def test_product_examples():
    a12, a13 = alpha(3, (1, 2)), alpha(3, (1, 3))
    assert product(unit(3), TRIPOD) == GraphVector.from_graph(TRIPOD)
    assert product(a12, a12) == 0
    assert product(a12, a13) == GraphVector.from_graph(alpha(3, (1, 2), (1, 3)))
    assert product(a13, a12) == gv(3, (-1, alpha(3, (1, 2), (1, 3))))


def test_product_keeps_internal_vertices_disjoint():
    # the two internal vertices are swapped by an odd edge permutation
    assert product(TRIPOD, TRIPOD) == 0
    p = product(TRIPOD, alpha(3, (1, 2)))
    g = OrientedGraph(3, 1, ((0, 3), (1, 3), (2, 3), (0, 1)))
    assert p == GraphVector.from_graph(g)
    assert product(alpha(3, (1, 2)), TRIPOD) == GraphVector.from_graph(g).scale(-1)


def test_unit_is_neutral():
    g = GraphVector.from_graph(TRIPOD)
    assert multiply(one(3), g) == g
    assert multiply(g, one(3)) == g


def test_linear_maps_on_vectors():
    v = gv(3, (2, TRIPOD), (3, alpha(3, (1, 2))))
    assert d(v) == differential(TRIPOD).scale(2)
    assert Delta(v) == GraphVector.from_graph(unit(3)).scale(3)
    assert d(TRIPOD) == differential(TRIPOD)


def test_operations_reject_non_admissible():
    bad = OrientedGraph(2, 1, ((0, 2), (1, 2)))
    with pytest.raises(NotAdmissible):
        differential(bad)
    with pytest.raises(NotAdmissible):
        product(bad, unit(2))


def test_returned_vectors_are_independent_copies():
    v = differential(TRIPOD)
    v.add_graph(alpha(3, (1, 2)), 5)
    assert differential(TRIPOD).coefficient(alpha(3, (1, 2))) == 0
