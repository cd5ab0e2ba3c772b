"""Edge contraction ``d``, edge deletion ``Delta`` and the product on G(n).

Signs use the stored edge order of the input: contracting the edge in
(1-based) position ``p`` contributes ``(-1)**p`` and deleting it contributes
``(-1)**(p + 1)``.  Every summand is canonicalized afterwards, and summands
that fail admissibility are dropped.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import NotAdmissible, OrientedGraph, is_admissible, unit
from .linalg import ArityMismatch, GraphVector

__all__ = [
    "contract",
    "delete",
    "differential",
    "delta",
    "product",
    "d",
    "Delta",
    "multiply",
    "linear",
]


def _require(g):
    if not is_admissible(g):
        raise NotAdmissible(f"{g} is not admissible")


def contract(g: OrientedGraph, pos: int) -> OrientedGraph | None:
    """``g / e`` for the edge at 0-based ``pos``; ``None`` if that is not admissible.

    The merged vertex is external when either endpoint is.  The other edges
    keep their relative order.
    """
    a, b = g.edges[pos]
    n = g.n_external
    if a < n and b < n:
        return None
    # a < b always, so b is internal; keep a, remove b
    def mv(v):
        if v == b:
            return a
        return v - 1 if v > b else v

    edges = tuple((mv(x), mv(y)) for k, (x, y) in enumerate(g.edges) if k != pos)
    h = OrientedGraph(n, g.n_internal - 1, edges)
    return h if is_admissible(h) else None


def delete(g: OrientedGraph, pos: int) -> OrientedGraph | None:
    """``g - e`` for the edge at 0-based ``pos``; ``None`` if not admissible."""
    h = OrientedGraph(g.n_external, g.n_internal, g.edges[:pos] + g.edges[pos + 1:])
    return h if is_admissible(h) else None


@lru_cache(maxsize=1 << 18)
def _differential(g):
    out = GraphVector(g.n_external)
    for pos in range(g.n_edges):
        h = contract(g, pos)
        if h is not None:
            # 1-based position pos + 1
            out.add_graph(h, -1 if pos % 2 == 0 else 1)
    return out


@lru_cache(maxsize=1 << 18)
def _delta(g):
    out = GraphVector(g.n_external)
    for pos in range(g.n_edges):
        h = delete(g, pos)
        if h is not None:
            out.add_graph(h, 1 if pos % 2 == 0 else -1)
    return out


def differential(g: OrientedGraph) -> GraphVector:
    _require(g)
    return _differential(g).copy()


def delta(g: OrientedGraph) -> GraphVector:
    _require(g)
    return _delta(g).copy()


def product(g1: OrientedGraph, g2: OrientedGraph) -> GraphVector:
    """Union of edges (``g1``'s first), internal vertices kept disjoint."""
    n = g1.n_external
    if g2.n_external != n:
        raise ArityMismatch(f"product of G({n}) and G({g2.n_external})")
    m1 = g1.n_internal
    shift = [v if v < n else v + m1 for v in range(g2.n_vertices)]
    edges = g1.edges + tuple((shift[a], shift[b]) for a, b in g2.edges)
    h = OrientedGraph(n, m1 + g2.n_internal, edges)
    if len(set(edges)) != len(edges):
        return GraphVector(n)
    return GraphVector.from_graph(h)


def linear(fn):
    """Extend ``fn: OrientedGraph -> GraphVector`` linearly to vectors."""

    def apply(v):
        if isinstance(v, OrientedGraph):
            return fn(v)
        out = GraphVector(v.arity)
        for k, c in v.terms.items():
            out.iadd(fn(k), c)
        return out

    apply.__name__ = fn.__name__
    apply.__doc__ = fn.__doc__
    return apply


d = linear(differential)
Delta = linear(delta)


def multiply(u: GraphVector, v: GraphVector) -> GraphVector:
    if u.arity != v.arity:
        raise ArityMismatch(f"product of G({u.arity}) and G({v.arity})")
    out = GraphVector(u.arity)
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            out.iadd(product(k1, k2), c1 * c2)
    return out


def one(n: int) -> GraphVector:
    return GraphVector.from_graph(unit(n))
