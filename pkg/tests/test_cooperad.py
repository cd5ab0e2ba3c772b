import pytest

from framedgc.cooperad import check_coassociativity, cocompose, cocompose_vector, delta_tensor
from framedgc.engine import enumerate_basis
from framedgc.graph import OrientedGraph, alpha, unit
from framedgc.linalg import TensorVector
from framedgc.ops import Delta

TRIPOD = OrientedGraph(3, 1, ((0, 3), (1, 3), (2, 3)))


def tv(shape, *terms):
    return TensorVector(shape, {keys: c for c, keys in terms})


def test_edge_inside_block():
    assert cocompose(alpha(3, (1, 2)), 1, 2, 2) == tv((2, 2), (1, (unit(2), alpha(2, (1, 2)))))


def test_edge_leaving_block():
    assert cocompose(alpha(3, (1, 3)), 1, 2, 2) == tv((2, 2), (1, (alpha(2, (1, 2)), unit(2))))


def test_edge_outside_block_is_relabelled():
    # block {2, 3} collapses to vertex 2 of the outer graph; external 4 becomes 3
    g = alpha(4, (1, 4))
    assert cocompose(g, 2, 3, 2) == tv((3, 2), (1, (alpha(3, (1, 3)), unit(2))))


@pytest.mark.parametrize("i,m,n", [(2, 2, 3), (1, 1, 4), (4, 4, 1), (1, 3, 2)])
def test_unit(i, m, n):
    assert cocompose(unit(4), i, m, n) == tv((m, n), (1, (unit(m), unit(n))))


def test_tripod_splittings():
    assert cocompose(TRIPOD, 1, 1, 3) == tv((1, 3), (1, (unit(1), TRIPOD)))
    assert cocompose(TRIPOD, 2, 3, 1) == tv((3, 1), (1, (TRIPOD, unit(1))))
    # a binary split leaves either a bivalent internal vertex or a double edge
    for i in (1, 2):
        assert cocompose(TRIPOD, i, 2, 2) == 0


def test_internal_vertex_moves_inside_with_shuffle_sign():
    g = OrientedGraph(4, 1, ((0, 4), (1, 4), (2, 4), (2, 3)))
    # the inner factor takes edges 1..3, the outer factor edge 4: shuffle (4,1,2,3) is odd
    assert cocompose(g, 1, 2, 3) == tv((2, 3), (-1, (alpha(2, (1, 2)), TRIPOD)))


def test_two_edges_split_sign():
    # edge 1 goes inside, edge 2 outside: reordering to (outer, inner) costs a sign
    g = alpha(3, (1, 2), (1, 3))
    assert cocompose(g, 1, 2, 2) == tv((2, 2), (-1, (alpha(2, (1, 2)), alpha(2, (1, 2)))))


def test_index_validation():
    with pytest.raises(ValueError):
        cocompose(unit(3), 3, 2, 2)
    with pytest.raises(ValueError):
        cocompose(unit(3), 1, 2, 3)


def test_commutes_with_delta_on_small_graphs():
    for g in enumerate_basis(3, 1, 1) + enumerate_basis(3, 2, 0) + enumerate_basis(3, 0, 1):
        for i, m, n in [(1, 2, 2), (2, 2, 2), (1, 1, 3), (2, 3, 1)]:
            assert cocompose_vector(Delta(g), i, m, n) == delta_tensor(cocompose(g, i, m, n))


def test_coassociativity_unit_and_tripod():
    samples = [(unit(3), t) for t in [(1, 1, 3), (2, 2, 1), (1, 2, 2), (3, 1, 1), (2, 1, 2)]]
    samples += [(TRIPOD, t) for t in [(1, 1, 3), (2, 2, 1), (1, 2, 2), (3, 1, 1), (2, 1, 2)]]
    rep = check_coassociativity(samples)
    assert rep.passed and rep.cases > 0 and rep.undefined == 0


def test_coassociativity_without_internal_vertices():
    samples = []
    for a in (1, 2, 3):
        for b in (1, 2):
            for c in (1, 2):
                N = a + b + c - 2
                if N > 4:
                    continue
                for k in range(0, 4):
                    samples.extend((g, (a, b, c)) for g in enumerate_basis(N, k, 0))
    rep = check_coassociativity(samples)
    assert rep.passed, rep.failures[:1]


def test_broken_cocomposition_is_caught():
    def bad(g, i, m, n):
        out = cocompose(g, i, m, n)
        # drop the sign: no longer coassociative on two-edge graphs
        return TensorVector(out.shape, {k: abs(c) for k, c in out.terms.items()})

    samples = [(g, (2, 2, 2)) for g in enumerate_basis(4, 2, 0)]
    assert not check_coassociativity(samples, co=bad).passed
