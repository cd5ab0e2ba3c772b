import os

import pytest

from framedgc.engine import (
    BasisCache,
    betti,
    betti_oracle,
    betti_subcomplex,
    differential_matrix,
    enumerate_basis,
    framed_betti,
    framed_betti_from_ranks,
    framed_betti_oracle,
    framed_poly,
    sector_betti,
    stabilization_report,
)
from framedgc.graph import alpha, is_admissible, unit
from framedgc.linalg import rank
from framedgc.ops import differential


def test_enumerate_examples():
    assert enumerate_basis(2, 1, 0) == [alpha(2, (1, 2))]
    assert enumerate_basis(2, 0, 0) == [unit(2)]
    assert enumerate_basis(3, 2, 0) == sorted([alpha(3, (1, 2), (1, 3)),
                                               alpha(3, (1, 2), (2, 3)),
                                               alpha(3, (1, 3), (2, 3))])


def test_enumerate_empty_cells():
    assert enumerate_basis(1, 1, 0) == []
    assert enumerate_basis(2, -3, 1) == []
    assert enumerate_basis(3, 5, 0) == []


@pytest.mark.parametrize("n,k,m", [(3, 1, 1), (3, 0, 2), (4, 2, 1), (2, 1, 2)])
def test_basis_invariants(n, k, m):
    basis = enumerate_basis(n, k, m)
    assert basis == sorted(set(basis))
    for g in basis:
        assert is_admissible(g)
        assert (g.n_external, g.degree, g.n_internal) == (n, k, m)
        assert g.n_edges == k + 2 * m


@pytest.mark.parametrize("n,k,m", [(3, 1, 1), (3, 0, 2), (4, 1, 1), (4, 0, 2)])
def test_d_closes_and_rank_nullity(n, k, m):
    src, tgt = enumerate_basis(n, k, m), enumerate_basis(n, k + 1, m - 1)
    mat = differential_matrix(src, tgt)
    r = rank(mat)
    kernel = len(src) - r
    assert 0 <= kernel <= len(src) and r <= len(tgt)
    # the supports of d(g) lie in the target basis by construction
    for g in src:
        assert set(differential(g).terms) <= set(tgt)


def test_betti_examples():
    assert betti(2, 0, 0) == betti(2, 0, 2) == 1
    assert betti(2, 1, 0) == betti(2, 1, 2) == 1
    assert [betti(3, k, 3) for k in range(3)] == [1, 3, 2]
    assert betti(4, 1, 2) == 6


def test_betti_beyond_top_degree():
    assert betti(3, 3, 2) == 0
    assert betti(1, 1, 2) == 0


def test_higher_sectors_are_acyclic():
    for n, k in [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1)]:
        for m in range(1, 3):
            assert sector_betti(n, k, m) == 0


def test_subcomplex_truncation_does_not_settle():
    # the span of graphs with I <= imax keeps the top layer's cycles
    values = [betti_subcomplex(3, 2, i) for i in range(3)]
    assert values[0] == len(enumerate_basis(3, 2, 0))
    assert values[-1] > betti_oracle(3, 2)
    assert values == sorted(values)


def test_stabilization_examples():
    rep = stabilization_report(2, 1, range(4))
    assert set(rep.values.values()) == {1} and rep.stable_from == 0
    rep = stabilization_report(3, 2, range(4))
    assert rep.oracle == 2 and rep.matches and rep.values[3] == 2
    for k in (1, 2, 3):
        rep = stabilization_report(1, k, range(3))
        assert set(rep.values.values()) == {0} and rep.matches
    assert rep.as_dict()["stable_from"] == 0


def test_framed_dimensions():
    assert framed_poly(2) == [1, 3, 3, 1]
    assert framed_poly(3) == [1, 6, 14, 16, 9, 2]
    for n in (1, 2):
        for k in range(2 * n):
            assert framed_betti_from_ranks(n, k, 2) == framed_betti_oracle(n, k)
            assert framed_betti(n, k, 2) == framed_betti_oracle(n, k)


def test_cache_roundtrip(tmp_path):
    cache = BasisCache(tmp_path)
    basis = enumerate_basis(3, 1, 1, cache=cache)
    path = cache.path(3, 1, 1)
    assert path.name == "basis_n3_d1_i1.txt"
    assert path.read_text().startswith("# framedgc-basis version=1 n=3 k=1 I=1")
    assert cache.load(3, 1, 1) == basis
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_cache_stale_version_is_regenerated(tmp_path):
    cache = BasisCache(tmp_path)
    basis = enumerate_basis(3, 2, 0, cache=cache)
    path = cache.path(3, 2, 0)
    path.write_text(path.read_text().replace("version=1", "version=0"))
    assert cache.load(3, 2, 0) is None
    assert enumerate_basis(3, 2, 0, cache=cache) == basis
    assert "version=1" in path.read_text()


def test_cache_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FRAMEDGC_CACHE_DIR", str(tmp_path))
    enumerate_basis(2, 1, 0)
    assert (tmp_path / "basis_n2_d1_i0.txt").exists()
