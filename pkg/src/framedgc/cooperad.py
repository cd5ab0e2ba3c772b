"""Cocomposition maps G(m+n-1) -> G(m) (x) G(n) and checks of the cooperad axioms.

For a graph on externals ``1..m+n-1`` and an index ``i``, the block
``{i, ..., i+n-1}`` together with a chosen set ``V''`` of internal vertices
spans the full subgraph ``g''``; collapsing it to a single external vertex
gives ``g'``.  The summand sign is that of the shuffle taking the edge order
of ``g`` to (edges of ``g'``, then edges of ``g''``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import NotAdmissible, OrientedGraph, canonicalize, is_admissible, permutation_sign
from .linalg import GraphVector, TensorVector
from .ops import Delta, d
from .tensor import apply_factor, expand_first, expand_last, transpose_last

__all__ = [
    "split",
    "cocompose",
    "cocompose_vector",
    "graph_degree",
    "d_tensor",
    "delta_tensor",
    "coassociativity_cases",
    "check_coassociativity",
    "CoassociativityReport",
]


def _check_indices(total, i, m, n):
    if m < 1 or n < 1:
        raise ValueError(f"component arities must be positive, got m={m} n={n}")
    if not 1 <= i <= m:
        raise ValueError(f"index i={i} outside 1..{m}")
    if total != m + n - 1:
        raise ValueError(f"graph in G({total}) but m + n - 1 = {m + n - 1}")


def split(g: OrientedGraph, i: int, m: int, n: int):
    """Yield ``(sign, g', g'')`` for every admissible summand of the cocomposition.

    Factors are returned with inherited edge order (not canonicalized).
    """
    _check_indices(g.n_external, i, m, n)
    N = g.n_external
    lo, hi = i - 1, i + n - 2  # 0-based block of externals
    internals = list(range(N, g.n_vertices))
    for r in range(len(internals) + 1):
        for inner in itertools.combinations(internals, r):
            inner_set = set(inner)
            outer = [v for v in internals if v not in inner_set]
            # g'' labels: block externals 0..n-1, then chosen internals
            lab2 = {v: v - lo for v in range(lo, hi + 1)}
            lab2.update({v: n + t for t, v in enumerate(inner)})
            # g' labels: externals outside the block, collapsed vertex i-1, then the rest
            lab1 = {}
            for v in range(N):
                lab1[v] = v if v < lo else (lo if v <= hi else v - n + 1)
            lab1.update({v: lo for v in inner})
            lab1.update({v: m + t for t, v in enumerate(outer)})
            e1, e2, p1, p2 = [], [], [], []
            for pos, (a, b) in enumerate(g.edges):
                if a in lab2 and b in lab2:
                    e2.append((lab2[a], lab2[b]))
                    p2.append(pos)
                else:
                    e1.append((lab1[a], lab1[b]))
                    p1.append(pos)
            if len(set(e1)) != len(e1):
                continue
            g1 = OrientedGraph(m, len(outer), tuple(e1))
            g2 = OrientedGraph(n, len(inner), tuple(e2))
            if not (is_admissible(g1) and is_admissible(g2)):
                continue
            yield permutation_sign(p1 + p2), g1, g2


def cocompose(g: OrientedGraph, i: int, m: int, n: int) -> TensorVector:
    if not is_admissible(g):
        raise NotAdmissible(f"{g} is not admissible")
    out = TensorVector((m, n))
    for sign, g1, g2 in split(g, i, m, n):
        c1 = canonicalize(g1)
        c2 = canonicalize(g2)
        if c1 is None or c2 is None:
            continue
        out.add_term((c1[0], c2[0]), sign * c1[1] * c2[1])
    return out


def cocompose_vector(v: GraphVector, i: int, m: int, n: int) -> TensorVector:
    out = TensorVector((m, n))
    for k, c in v.terms.items():
        out.iadd(cocompose(k, i, m, n), c)
    return out


def graph_degree(g: OrientedGraph) -> int:
    return g.degree


def d_tensor(t: TensorVector) -> TensorVector:
    """``d`` on a tensor of graph vectors, extended as a degree +1 derivation."""
    out = TensorVector(t.shape)
    for r in range(len(t.shape)):
        out.iadd(apply_factor(t, r, d, t.shape, graph_degree, op_degree=1))
    return out


def delta_tensor(t: TensorVector) -> TensorVector:
    """``Delta`` on a tensor of graph vectors, extended by the Leibniz rule."""
    out = TensorVector(t.shape)
    for r in range(len(t.shape)):
        out.iadd(apply_factor(t, r, Delta, t.shape, graph_degree, op_degree=1))
    return out


def coassociativity_cases(co, key, a, b, c, deg):
    """Yield ``(label, lhs, rhs)`` for every axiom instance on ``key``.

    ``co(key, i, m, n)`` is a cocomposition returning a 2-factor tensor and
    ``key`` lives in arity ``a + b + c - 2``.  Both the nested ("sequential")
    and the disjoint ("parallel") axioms are produced.
    """
    shape = (a, b, c)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            lhs = expand_last(co(key, i, a, b + c - 1),
                              lambda y, j=j: co(y, j, b, c), shape)
            rhs = expand_first(co(key, i + j - 1, a + b - 1, c),
                               lambda u, i=i: co(u, i, a, b), shape)
            yield f"seq(i={i},j={j},a={a},b={b},c={c})", lhs, rhs
    for i in range(1, a + 1):
        for j in range(1, i):
            lhs = expand_first(co(key, j, a + b - 1, c),
                               lambda u, i=i: co(u, i, a, b), shape)
            rhs = expand_first(co(key, i + c - 1, a + c - 1, b),
                               lambda w, j=j: co(w, j, a, c), (a, c, b))
            yield f"par(i={i},j={j},a={a},b={b},c={c})", lhs, transpose_last(rhs, deg)


@dataclass
class CoassociativityReport:
    cases: int = 0
    undefined: int = 0
    n_failures: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.n_failures == 0


def check_coassociativity(samples, co=cocompose, deg=graph_degree, max_failures=5,
                          fmt=str) -> CoassociativityReport:
    """Run every axiom instance for ``samples``, an iterable of ``(key, (a, b, c))``.

    A cocomposition raising ``IndexError`` marks the instance undefined
    rather than failed.
    """
    rep = CoassociativityReport()
    for key, (a, b, c) in samples:
        try:
            cases = list(coassociativity_cases(co, key, a, b, c, deg))
        except IndexError:
            rep.undefined += 1
            continue
        for label, lhs, rhs in cases:
            rep.cases += 1
            if lhs != rhs:
                rep.n_failures += 1
                if len(rep.failures) < max_failures:
                    rep.failures.append({"element": fmt(key), "case": label,
                                         "lhs": repr(lhs), "rhs": repr(rhs)})
    return rep
