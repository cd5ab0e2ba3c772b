"""Exact formal linear combinations and sparse exact rank over Q."""

from __future__ import annotations

import heapq
import math
import random
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _kernels
from .graph import OrientedGraph, canonicalize

__all__ = [
    "Vector",
    "GraphVector",
    "TensorVector",
    "ArityMismatch",
    "SparseRationalMatrix",
    "rank",
    "rank_fraction_free",
    "rank_modular",
    "random_prime",
]


class ArityMismatch(ValueError):
    pass


class Vector:
    """Finitely supported Q-combination of hashable basis keys.

    ``shape`` tags the ambient space (an arity, or a tuple of arities); two
    vectors combine only when their shapes agree.  Zero coefficients are
    never stored.
    """

    __slots__ = ("shape", "terms")

    def __init__(self, shape, terms=None):
        self.shape = shape
        self.terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                self.add_term(k, c)

    def _new(self, terms=None):
        return type(self)(self.shape, terms)

    def add_term(self, key, coef) -> None:
        if not coef:
            return
        c = self.terms.get(key, 0) + coef
        if c:
            self.terms[key] = c
        else:
            del self.terms[key]

    def _check(self, other):
        if not isinstance(other, Vector) or type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} "
                            f"with {type(other).__name__}")
        if other.shape != self.shape:
            raise ArityMismatch(f"shape {self.shape} vs {other.shape}")

    def iadd(self, other, coef=1):
        self._check(other)
        for k, c in other.terms.items():
            self.add_term(k, coef * c)
        return self

    def __add__(self, other):
        return self.copy().iadd(other)

    def __sub__(self, other):
        return self.copy().iadd(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return self._new()
        out = self._new()
        out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def __rmul__(self, c):
        if isinstance(c, Rational):
            return self.scale(c)
        return NotImplemented

    def copy(self):
        out = self._new()
        out.terms = dict(self.terms)
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Vector) or type(other) is not type(self):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def __iter__(self):
        return iter(self.items())

    def coefficient(self, key):
        return self.terms.get(key, 0)

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}({self.shape!r}, 0)"
        body = " ".join(f"{_fmt_coef(c)}*{k}" for k, c in self.items())
        return f"{type(self).__name__}({self.shape!r}, {body})"


def _fmt_coef(c) -> str:
    c = Fraction(c)
    s = str(c)
    return s if c < 0 else "+" + s


class GraphVector(Vector):
    """An element of G(n): canonical graphs with rational coefficients."""

    __slots__ = ()

    @property
    def arity(self) -> int:
        return self.shape

    @classmethod
    def from_graph(cls, g: OrientedGraph, coef=1) -> GraphVector:
        v = cls(g.n_external)
        v.add_graph(g, coef)
        return v

    def add_graph(self, g: OrientedGraph, coef=1) -> None:
        """Add ``coef * g``, canonicalizing; graphs equal to zero are dropped."""
        if g.n_external != self.shape:
            raise ArityMismatch(f"graph in G({g.n_external}) added to G({self.shape})")
        can = canonicalize(g)
        if can is not None:
            self.add_term(can[0], can[1] * coef)

    def homogeneous_degree(self):
        degs = {k.degree for k in self.terms}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous vector with degrees {sorted(degs)}")
        return degs.pop() if degs else None


class TensorVector(Vector):
    """Element of a tensor product; keys are tuples with one basis key per factor."""

    __slots__ = ()

    @property
    def arities(self):
        return self.shape


# -- sparse matrices and rank ----------------------------------------------

class SparseRationalMatrix:
    """Rows x cols matrix stored as ``{(row, col): value}``, no stored zeros."""

    def __init__(self, nrows: int, ncols: int, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        for (r, c), v in (entries.items() if isinstance(entries, dict)
                          else (entries or ())):
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if (r, c) in self.entries:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            if v:
                self.entries[r, c] = Fraction(v)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> SparseRationalMatrix:
        return SparseRationalMatrix(
            self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()})

    def rows(self) -> list[dict[int, Fraction]]:
        out = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self):
        a = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            a[r][c] = v
        return a

    def __eq__(self, other):
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.entries) == (
            other.nrows, other.ncols, other.entries)

    def dumps(self) -> str:
        """Coordinate text: ``rows cols nnz`` then 1-based ``r c num/den`` lines."""
        lines = [f"{self.nrows} {self.ncols} {self.nnz}"]
        for (r, c), v in sorted(self.entries.items()):
            lines.append(f"{r + 1} {c + 1} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> SparseRationalMatrix:
        lines = [ln for ln in text.splitlines()
                 if ln.strip() and not ln.lstrip().startswith("%")]
        nrows, ncols, nnz = map(int, lines[0].split())
        if len(lines) - 1 != nnz:
            raise ValueError(f"header says {nnz} entries, found {len(lines) - 1}")
        entries = []
        for ln in lines[1:]:
            r, c, v = ln.split()
            entries.append(((int(r) - 1, int(c) - 1), Fraction(v)))
        return cls(nrows, ncols, entries)


def _integer_rows(m: SparseRationalMatrix) -> list[dict[int, int]]:
    rows = []
    for row in m.rows():
        if not row:
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        rows.append({c: int(v * den) for c, v in row.items()})
    return rows


def rank_fraction_free(m: SparseRationalMatrix) -> int:
    """Exact rank by integer-preserving elimination.

    Each step pivots on the sparsest remaining column (shortest row within
    it), replaces every other row ``r`` in that column by
    ``p * r - r[c] * pivot_row`` and divides out the row content, so no
    rationals appear and entries stay small.
    """
    rows = _integer_rows(m)
    col_rows: dict[int, set[int]] = {}
    for idx, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(idx)
    heap = [(len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    alive = [True] * len(rows)
    rk = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        s = col_rows.get(c)
        if not s:
            continue
        if cnt != len(s):
            heapq.heappush(heap, (len(s), c))
            continue
        piv = min(s, key=lambda r: (len(rows[r]), r))
        prow = rows[piv]
        p = prow[c]
        alive[piv] = False
        for cc in prow:
            col_rows[cc].discard(piv)
        rk += 1
        for r in list(s):
            row = rows[r]
            f = row[c]
            new = {k: p * v for k, v in row.items()}
            for k, v in prow.items():
                x = new.get(k, 0) - f * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            for k in row:
                if k not in new:
                    col_rows[k].discard(r)
            for k in new:
                if k not in row:
                    col_rows.setdefault(k, set()).add(r)
            rows[r] = new
            if not new:
                alive[r] = False
        del col_rows[c]
        for cc in prow:
            if cc in col_rows:
                heapq.heappush(heap, (len(col_rows[cc]), cc))
    return rk


def random_prime(rng: random.Random | None = None) -> int:
    """A random prime in (2**30, 2**31)."""
    from sympy import nextprime

    rng = rng or random.Random()
    while True:
        p = nextprime(rng.randrange(2**30, 2**31 - 2**20))
        if p < 2**31:
            return int(p)


def rank_modular(m: SparseRationalMatrix, p: int) -> int:
    """Rank of ``m`` over GF(p); never exceeds the rational rank."""
    rows = _integer_rows(m)
    if not rows or m.ncols == 0:
        return 0
    a = np.zeros((len(rows), m.ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            a[i, c] = v % p
    return _kernels.rank_mod_p(a, p)


def rank(m: SparseRationalMatrix, prime: int | None = None) -> int:
    """Exact rank over Q; with ``prime`` given, also checked against GF(prime)."""
    r = rank_fraction_free(m)
    if prime is not None:
        rp = rank_modular(m, prime)
        if rp != r:
            raise ArithmeticError(
                f"rational rank {r} but rank mod {prime} is {rp} "
                f"on a {m.nrows}x{m.ncols} matrix")
    return r
