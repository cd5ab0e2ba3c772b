"""The semidirect product cooperad (G x| H)(n) = G(n) (x) H^{(x) n}.

A basis key is ``(graph, S)`` with ``graph`` canonical and ``S`` the sorted
tuple of circle slots holding ``dtheta``.  Signs treat the key as
``graph (x) h_1 (x) ... (x) h_n`` with the circle factors in slot order.
"""

from __future__ import annotations

from functools import lru_cache

from .arnold import BVClass, RULES, bv_degree, q_project, slot_image
from .cooperad import cocompose
from .graph import OrientedGraph, permutation_sign, unit
from .linalg import GraphVector, TensorVector, Vector
from .ops import delta, differential, product
from .tensor import apply_factor, tensor_mul

__all__ = [
    "SemidirectElement",
    "sd_degree",
    "sd_key_mul",
    "sd_mul",
    "sd_differential",
    "sd_differential_tensor",
    "sd_cocompose",
    "sd_cocompose_key",
    "sd_basis",
    "q_sd",
    "q_sd_tensor",
    "serialize_element",
]


class SemidirectElement(Vector):
    __slots__ = ()

    @property
    def arity(self):
        return self.shape

    @classmethod
    def from_graph(cls, g: OrientedGraph, S=(), coef=1):
        out = cls(g.n_external)
        for h, c in GraphVector.from_graph(g, coef).terms.items():
            out.add_term((h, tuple(sorted(S))), c)
        return out


def sd_degree(key) -> int:
    g, S = key
    return g.degree + len(S)


@lru_cache(maxsize=1 << 16)
def _sd_key_mul(k1, k2):
    (g1, S1), (g2, S2) = k1, k2
    if set(S1) & set(S2):
        return ()
    seq = S1 + S2
    s = permutation_sign(seq)
    if len(S1) * g2.degree % 2:
        s = -s
    U = tuple(sorted(seq))
    return tuple(((h, U), s * c) for h, c in product(g1, g2).terms.items())


def sd_key_mul(k1, k2) -> dict:
    return dict(_sd_key_mul(k1, k2))


def sd_mul(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    out = SemidirectElement(x.arity)
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            for k, c in _sd_key_mul(k1, k2):
                out.add_term(k, c1 * c2 * c)
    return out


def _sd_d_key(key):
    g, S = key
    return {(h, S): c for h, c in differential(g).terms.items()}


def sd_differential(x: SemidirectElement) -> SemidirectElement:
    """``d (x) id``; the circle factors have zero differential."""
    out = SemidirectElement(x.arity)
    for key, c in x.terms.items():
        for k, cc in _sd_d_key(key).items():
            out.add_term(k, c * cc)
    return out


def sd_differential_tensor(t: TensorVector) -> TensorVector:
    out = TensorVector(t.shape)
    for r in range(len(t.shape)):
        out.iadd(apply_factor(t, r, _sd_d_key, t.shape, sd_degree, op_degree=1))
    return out


def _graph_image(g, i, m, n):
    """``g -> sum (g' , {}) (x) (g'', {}) + (g', {i}) (x) (Delta g'', {})``."""
    out = TensorVector((m, n))
    for (g1, g2), c in cocompose(g, i, m, n).terms.items():
        out.add_term(((g1, ()), (g2, ())), c)
        for h, ch in delta(g2).terms.items():
            out.add_term(((g1, (i,)), (h, ())), c * ch)
    return out


def _slot_image(k, i, m, n, rule):
    out = TensorVector((m, n))
    one_m, one_n = (unit(m), ()), (unit(n), ())
    for factor, slot in slot_image(k, i, m, n, rule):
        if factor == 0:
            out.add_term(((unit(m), (slot,)), one_n), 1)
        else:
            out.add_term((one_m, (unit(n), (slot,))), 1)
    return out


@lru_cache(maxsize=1 << 20)
def _sd_cocompose_key(key, i, m, n, rule):
    g, S = key
    acc = _graph_image(g, i, m, n)
    for k in S:
        acc = tensor_mul(acc, _slot_image(k, i, m, n, rule), sd_key_mul, sd_degree)
    return acc


def sd_cocompose_key(key, i, m, n, rule="corrected") -> TensorVector:
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    if not 1 <= i <= m:
        raise ValueError(f"index i={i} outside 1..{m}")
    return _sd_cocompose_key(key, i, m, n, rule).copy()


def sd_cocompose(x: SemidirectElement, i: int, m: int, n: int,
                 rule: str = "corrected") -> TensorVector:
    """Cocomposition on G x| H, extended as an algebra map from the image of
    the graph factor and of each circle generator."""
    if x.arity != m + n - 1:
        raise ValueError(f"element of arity {x.arity} but m + n - 1 = {m + n - 1}")
    out = TensorVector((m, n))
    for key, c in x.terms.items():
        out.iadd(sd_cocompose_key(key, i, m, n, rule), c)
    return out


def sd_basis(graphs, n):
    """All ``(graph, S)`` keys for the given canonical graphs of arity ``n``."""
    from itertools import combinations

    out = []
    for g in graphs:
        for s in range(n + 1):
            for S in combinations(range(1, n + 1), s):
                out.append((g, S))
    return out


def _q_key(key):
    g, S = key
    return {(mono, S): c for mono, c in q_project(g).terms.items()}


def q_sd(x: SemidirectElement) -> BVClass:
    """``q (x) id`` into H*(fFM(n))."""
    out = BVClass(x.arity)
    for key, c in x.terms.items():
        for k, cc in _q_key(key).items():
            out.add_term(k, c * cc)
    return out


def q_sd_tensor(t: TensorVector) -> TensorVector:
    for r in range(len(t.shape)):
        t = apply_factor(t, r, _q_key, t.shape, bv_degree)
    return t


def serialize_element(x: SemidirectElement) -> str:
    """One line per term: graph serialization, ``S={...}`` and the coefficient."""
    from .graph import serialize

    lines = []
    for (g, S), c in x.items():
        lines.append(f"{serialize(g)} S={{{','.join(map(str, S))}}} {c}")
    return "\n".join(lines)
