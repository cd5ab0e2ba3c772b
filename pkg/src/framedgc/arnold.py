"""Cohomology of FM(n) and fFM(n): the Arnold algebra and its framed extension.

An Arnold monomial is a tuple of pairs ``(i, j)`` (1-based, ``i < j``).  The
normal-form basis consists of monomials whose second indices strictly
increase.  A framed basis key is ``(monomial, S)`` where ``S`` is a sorted
tuple of circle slots carrying ``dtheta``; the circle factors sit after the
Arnold factor, in slot order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product as iproduct

from .graph import OrientedGraph, permutation_sign
from .linalg import GraphVector, TensorVector, Vector
from .tensor import tensor_mul

__all__ = [
    "ArnoldClass",
    "BVClass",
    "arnold_reduce",
    "reduce_monomial",
    "arnold_basis",
    "bv_basis",
    "omega",
    "dtheta",
    "q_project",
    "delta_cohomology",
    "delta_bv",
    "arnold_mul",
    "bv_mul",
    "bv_key_mul",
    "bv_degree",
    "bv_generator_image",
    "bv_cocompose",
    "bv_cocompose_key",
    "slot_image",
    "RULES",
    "bv_from_arnold",
    "delta_monomial",
]


class ArnoldClass(Vector):
    """Element of H*(FM(n)) in normal form."""

    __slots__ = ()

    @property
    def arity(self):
        return self.shape


class BVClass(Vector):
    """Element of H*(fFM(n)) = H*(FM(n)) (x) H^{(x) n}."""

    __slots__ = ()

    @property
    def arity(self):
        return self.shape


def _check_pair(n, i, j):
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"generator omega_{i}{j} out of range for n={n}")
    return (i, j) if i < j else (j, i)


@lru_cache(maxsize=1 << 16)
def reduce_monomial(mono: tuple) -> tuple:
    """Normal form of an ordered product of omega generators.

    Returns a tuple of ``(basis_monomial, coefficient)`` pairs.  Uses
    ``omega_ac omega_bc = omega_ab omega_bc - omega_ab omega_ac`` for
    ``a < b < c``, which is the three-term Arnold relation solved for the
    product of two generators sharing their top index.
    """
    pairs = [(a, b) if a < b else (b, a) for a, b in mono]
    if len(set(pairs)) != len(pairs):
        return ()
    keyed = [(b, a) for a, b in pairs]
    sign = permutation_sign(keyed)
    ordered = [(a, b) for b, a in sorted(keyed)]
    for p in range(len(ordered) - 1):
        (a, c), (b, c2) = ordered[p], ordered[p + 1]
        if c == c2:
            head, tail = tuple(ordered[:p]), tuple(ordered[p + 2:])
            acc = {}
            for rep, coef in ((((a, b), (b, c)), 1), (((a, b), (a, c)), -1)):
                for nf, cc in reduce_monomial(head + rep + tail):
                    acc[nf] = acc.get(nf, 0) + sign * coef * cc
            return tuple((k, v) for k, v in sorted(acc.items()) if v)
    return ((tuple(ordered), sign),)


def arnold_reduce(n: int, expr) -> ArnoldClass:
    """Normal form of ``expr``: a mapping or iterable of (monomial, coefficient)."""
    out = ArnoldClass(n)
    items = expr.items() if isinstance(expr, dict) else expr
    for mono, c in items:
        mono = tuple(_check_pair(n, *p) for p in mono)
        for nf, cc in reduce_monomial(mono):
            out.add_term(nf, c * cc)
    return out


def omega(n: int, *pairs) -> ArnoldClass:
    """The product ``omega_{p1} omega_{p2} ...`` reduced to normal form."""
    return arnold_reduce(n, [(tuple(pairs), 1)])


def arnold_basis(n: int, k: int) -> list[tuple]:
    """Normal-form monomials of degree ``k``: distinct top indices, any lower one."""
    out = []
    for tops in combinations(range(2, n + 1), k):
        for lows in iproduct(*[range(1, t) for t in tops]):
            out.append(tuple(zip(lows, tops)))
    return sorted(out)


def bv_basis(n: int, k: int) -> list[tuple]:
    out = []
    for s in range(min(n, k) + 1):
        for mono in arnold_basis(n, k - s):
            for S in combinations(range(1, n + 1), s):
                out.append((mono, S))
    return sorted(out)


def arnold_mul(x: ArnoldClass, y: ArnoldClass) -> ArnoldClass:
    out = ArnoldClass(x.arity)
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for nf, c in reduce_monomial(a + b):
                out.add_term(nf, ca * cb * c)
    return out


def q_project(v) -> ArnoldClass:
    """Graphs with internal vertices go to 0, ``alpha_ij`` to ``omega_ij``."""
    if isinstance(v, OrientedGraph):
        v = GraphVector.from_graph(v)
    out = ArnoldClass(v.arity)
    for g, c in v.terms.items():
        if g.n_internal:
            continue
        mono = tuple((a + 1, b + 1) for a, b in g.edges)
        for nf, cc in reduce_monomial(mono):
            out.add_term(nf, c * cc)
    return out


def delta_monomial(mono):
    """Terms of the derivation ``omega -> 1`` on an ordered product."""
    for p in range(len(mono)):
        yield mono[:p] + mono[p + 1:], (1 if p % 2 == 0 else -1)


def delta_cohomology(x: ArnoldClass) -> ArnoldClass:
    """The degree -1 derivation with ``omega_ij -> 1``."""
    out = ArnoldClass(x.arity)
    for mono, c in x.terms.items():
        for rest, s in delta_monomial(mono):
            for nf, cc in reduce_monomial(rest):
                out.add_term(nf, s * c * cc)
    return out


# -- framed side -----------------------------------------------------------

def bv_degree(key) -> int:
    mono, S = key
    return len(mono) + len(S)


def _merge_slots(S, T):
    if set(S) & set(T):
        return None, 0
    seq = S + T
    return tuple(sorted(seq)), permutation_sign(seq)


@lru_cache(maxsize=1 << 16)
def _bv_key_mul(k1, k2):
    (a, S), (b, T) = k1, k2
    U, s = _merge_slots(S, T)
    if U is None:
        return ()
    if len(S) * len(b) % 2:
        s = -s
    return tuple(((nf, U), s * c) for nf, c in reduce_monomial(a + b))


def bv_key_mul(k1, k2) -> dict:
    return dict(_bv_key_mul(k1, k2))


def bv_mul(x: BVClass, y: BVClass) -> BVClass:
    out = BVClass(x.arity)
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            for k, c in _bv_key_mul(k1, k2):
                out.add_term(k, c1 * c2 * c)
    return out


def dtheta(n: int, k: int) -> BVClass:
    if not 1 <= k <= n:
        raise ValueError(f"circle slot {k} out of range for n={n}")
    return BVClass(n, {((), (k,)): 1})


def bv_from_arnold(x: ArnoldClass, S=()) -> BVClass:
    return BVClass(x.arity, {(mono, tuple(S)): c for mono, c in x.terms.items()})


def delta_bv(x: BVClass) -> BVClass:
    """Derivation of the diagonal rotation: ``omega_ij -> 1`` and ``dtheta_k -> 1``."""
    out = BVClass(x.arity)
    for (mono, S), c in x.terms.items():
        for rest, s in delta_monomial(mono):
            for nf, cc in reduce_monomial(rest):
                out.add_term((nf, S), s * c * cc)
        sgn = -1 if len(mono) % 2 else 1
        for rest, s in delta_monomial(S):
            out.add_term((mono, rest), sgn * s * c)
    return out


# -- cocomposition ---------------------------------------------------------

RULES = ("corrected", "literal")


def slot_image(k: int, i: int, m: int, n: int, rule: str = "corrected"):
    """Where ``dtheta_k`` goes under the i-th cocomposition.

    Returns a list of ``(factor, slot)`` with factor 0 for the arity-m side
    and 1 for the arity-n side.  Under ``rule="literal"`` slots after the
    block are sent to ``k - i + 1``; an ``IndexError`` is raised when that
    lands outside ``1..m``.
    """
    if not 1 <= k <= m + n - 1:
        raise ValueError(f"slot {k} out of range for arity {m + n - 1}")
    if k < i:
        return [(0, k)]
    if k <= i + n - 1:
        return [(0, i), (1, k - i + 1)]
    if rule == "corrected":
        return [(0, k - n + 1)]
    if rule == "literal":
        t = k - i + 1
        if not 1 <= t <= m:
            raise IndexError(f"literal rule sends dtheta_{k} to slot {t} outside 1..{m}")
        return [(0, t)]
    raise ValueError(f"unknown rule {rule!r}")


_ONE = ((), ())


def bv_generator_image(gen, i, m, n, rule="corrected") -> TensorVector:
    """Image of ``("omega", (a, b))`` or ``("dtheta", k)`` under cocomposition."""
    kind, data = gen
    out = TensorVector((m, n))
    if kind == "dtheta":
        for factor, slot in slot_image(data, i, m, n, rule):
            key = ((), (slot,))
            out.add_term((key, _ONE) if factor == 0 else (_ONE, key), 1)
        return out
    a, b = data
    lo, hi = i, i + n - 1
    if lo <= a <= hi and lo <= b <= hi:
        out.add_term((_ONE, (((a - i + 1, b - i + 1),), ())), 1)
        # the rotation of the inserted configuration: dtheta'_i (x) Delta(omega) = dtheta'_i (x) 1
        out.add_term((((), (i,)), _ONE), 1)
        return out

    def phi(t):
        return t if t < lo else (i if t <= hi else t - n + 1)

    p = tuple(sorted((phi(a), phi(b))))
    out.add_term((((p,), ()), _ONE), 1)
    return out


def bv_cocompose_key(key, i, m, n, rule="corrected") -> TensorVector:
    """Cocomposition of a basis key, as the product of its generator images."""
    if not 1 <= i <= m:
        raise ValueError(f"index i={i} outside 1..{m}")
    mono, S = key
    gens = [("omega", p) for p in mono] + [("dtheta", k) for k in S]
    acc = TensorVector((m, n), {(_ONE, _ONE): 1})
    for gen in gens:
        acc = tensor_mul(acc, bv_generator_image(gen, i, m, n, rule), bv_key_mul, bv_degree)
    return acc


def bv_cocompose(x: BVClass, i: int, m: int, n: int, rule: str = "corrected") -> TensorVector:
    if x.arity != m + n - 1:
        raise ValueError(f"class of arity {x.arity} but m + n - 1 = {m + n - 1}")
    out = TensorVector((m, n))
    for key, c in x.terms.items():
        out.iadd(bv_cocompose_key(key, i, m, n, rule), c)
    return out
