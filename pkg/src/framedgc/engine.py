"""Basis enumeration, differential matrices and truncated Betti numbers of G(n)."""

from __future__ import annotations

import itertools
import logging
import os
import tempfile
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path

from .graph import OrientedGraph, canonicalize, is_admissible, parse, serialize
from .linalg import SparseRationalMatrix, rank
from .ops import differential

__all__ = [
    "FORMAT_VERSION",
    "CACHE_ENV",
    "enumerate_basis",
    "BasisCache",
    "differential_matrix",
    "betti",
    "sector_betti",
    "betti_subcomplex",
    "betti_oracle",
    "framed_betti_oracle",
    "framed_betti_from_ranks",
    "framed_betti",
    "poly_mul",
    "arnold_poly",
    "framed_poly",
    "stabilization_report",
    "StabilizationReport",
]

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
CACHE_ENV = "FRAMEDGC_CACHE_DIR"


@lru_cache(maxsize=None)
def _enumerate(n: int, k: int, m: int) -> tuple[OrientedGraph, ...]:
    ne = k + 2 * m
    if n < 1 or m < 0 or ne < 0:
        return ()
    nv = n + m
    pairs = list(itertools.combinations(range(nv), 2))
    if ne > len(pairs):
        return ()
    found = set()
    for edges in itertools.combinations(pairs, ne):
        if m:
            val = [0] * nv
            for a, b in edges:
                val[a] += 1
                val[b] += 1
            if min(val[n:]) < 3:
                continue
        g = OrientedGraph(n, m, edges)
        if not is_admissible(g):
            continue
        can = canonicalize(g)
        if can is not None:
            found.add(can[0])
    return tuple(sorted(found))


def enumerate_basis(n: int, k: int, m: int, cache: BasisCache | None = None):
    """Canonical representatives of the nonzero admissible graphs with ``n``
    external vertices, degree ``k`` and ``m`` internal vertices, sorted."""
    if cache is None:
        cache = BasisCache.from_env()
    if cache is not None:
        hit = cache.load(n, k, m)
        if hit is not None:
            return hit
    basis = list(_enumerate(n, k, m))
    if cache is not None:
        cache.store(n, k, m, basis)
    return basis


class BasisCache:
    """One text file per (n, k, I) cell, written atomically."""

    def __init__(self, directory):
        self.directory = Path(directory)

    @classmethod
    def from_env(cls):
        d = os.environ.get(CACHE_ENV)
        return cls(d) if d else None

    def path(self, n, k, m) -> Path:
        return self.directory / f"basis_n{n}_d{k}_i{m}.txt"

    @staticmethod
    def header(n, k, m, count) -> str:
        return f"# framedgc-basis version={FORMAT_VERSION} n={n} k={k} I={m} count={count}"

    def load(self, n, k, m):
        p = self.path(n, k, m)
        if not p.exists():
            return None
        lines = p.read_text(encoding="utf-8").splitlines()
        if not lines:
            return None
        fields = dict(tok.split("=", 1) for tok in lines[0].split()[2:])
        if (int(fields.get("version", -1)) != FORMAT_VERSION
                or (int(fields["n"]), int(fields["k"]), int(fields["I"])) != (n, k, m)):
            log.info("stale cache cell %s, regenerating", p)
            return None
        basis = [parse(ln) for ln in lines[1:] if ln.strip()]
        if len(basis) != int(fields["count"]):
            return None
        return basis

    def store(self, n, k, m, basis) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(n, k, m)
        text = "\n".join([self.header(n, k, m, len(basis))]
                         + [serialize(g) for g in basis]) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=p.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return p


def differential_matrix(source, target) -> SparseRationalMatrix:
    """Matrix of ``d`` from span(source) to span(target); columns are sources.

    Raises if some ``d(g)`` leaves the span of ``target``.
    """
    index = {g: r for r, g in enumerate(target)}
    entries = {}
    for col, g in enumerate(source):
        for h, c in differential(g).terms.items():
            try:
                entries[index[h], col] = c
            except KeyError:
                raise ValueError(f"d({g}) has term {h} outside the target basis") from None
    return SparseRationalMatrix(len(target), len(source), entries)


@lru_cache(maxsize=None)
def _d_rank(n, k, m, prime):
    """rank of d: (n, k, m) -> (n, k + 1, m - 1)."""
    if m == 0:
        return 0
    src = enumerate_basis(n, k, m)
    if not src:
        return 0
    tgt = enumerate_basis(n, k + 1, m - 1)
    return rank(differential_matrix(src, tgt), prime)


def sector_betti(n: int, k: int, m: int, prime: int | None = None) -> int:
    """Degree-k cohomology of the summand of G(n) with ``E - I == k + m``.

    Contraction removes one edge and one internal vertex, so ``E - I`` is
    preserved and G(n) splits into these finite summands.  In degree k the
    summand consists of the graphs with exactly ``m`` internal vertices.
    """
    dim = len(enumerate_basis(n, k, m))
    return dim - _d_rank(n, k, m, prime) - _d_rank(n, k - 1, m + 1, prime)


def betti(n: int, k: int, imax: int, prime: int | None = None) -> int:
    """Degree-k cohomology of the summand spanned by graphs with
    ``E - I <= k + imax``; in degree k these are the graphs with at most
    ``imax`` internal vertices."""
    return sum(sector_betti(n, k, m, prime) for m in range(imax + 1))


def betti_subcomplex(n: int, k: int, imax: int, prime: int | None = None) -> int:
    """Degree-k cohomology of the span of all graphs with ``I <= imax``.

    This is a subcomplex but not a summand: the kernel of d on the top
    internal-vertex layer survives uncancelled, so the values grow with
    ``imax`` instead of settling.
    """
    dim = sum(len(enumerate_basis(n, k, m)) for m in range(imax + 1))
    out_rank = sum(_d_rank(n, k, m, prime) for m in range(1, imax + 1))
    in_rank = sum(_d_rank(n, k - 1, m, prime) for m in range(1, imax + 1))
    return dim - out_rank - in_rank


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def arnold_poly(n: int) -> list[int]:
    """Coefficients of prod_{j=1}^{n-1} (1 + j t)."""
    p = [1]
    for j in range(1, n):
        p = poly_mul(p, [1, j])
    return p


def framed_poly(n: int) -> list[int]:
    """Coefficients of (1 + t)^n prod_{j=1}^{n-1} (1 + j t)."""
    return poly_mul([comb(n, s) for s in range(n + 1)], arnold_poly(n))


def betti_oracle(n: int, k: int) -> int:
    p = arnold_poly(n)
    return p[k] if 0 <= k < len(p) else 0


def framed_betti_oracle(n: int, k: int) -> int:
    p = framed_poly(n)
    return p[k] if 0 <= k < len(p) else 0


def framed_betti_from_ranks(n: int, k: int, imax: int) -> int:
    """Künneth combination: sum over circle-slot subsets of size s of betti(k - s)."""
    return sum(comb(n, s) * betti(n, k - s, imax) for s in range(min(n, k) + 1))


@lru_cache(maxsize=None)
def _sd_rank(n, k, m, prime):
    """rank of d (x) id on (G x| H)(n) from degree k, I = m to degree k + 1."""
    from itertools import combinations

    from .semidirect import SemidirectElement, sd_differential

    if m == 0:
        return 0
    subsets = [S for s in range(n + 1) for S in combinations(range(1, n + 1), s)]
    src = [(g, S) for S in subsets for g in enumerate_basis(n, k - len(S), m)]
    if not src:
        return 0
    tgt = [(g, S) for S in subsets for g in enumerate_basis(n, k + 1 - len(S), m - 1)]
    index = {key: r for r, key in enumerate(tgt)}
    entries = {}
    for col, key in enumerate(src):
        for h, c in sd_differential(SemidirectElement(n, {key: 1})).terms.items():
            entries[index[h], col] = c
    return rank(SparseRationalMatrix(len(tgt), len(src), entries), prime)


def framed_betti(n: int, k: int, imax: int, prime: int | None = None) -> int:
    """Degree-k cohomology of (G x| H)(n), truncated as in :func:`betti`,
    computed from the matrices of the semidirect differential."""
    from math import comb as _comb

    total = 0
    for m in range(imax + 1):
        dim = sum(_comb(n, s) * len(enumerate_basis(n, k - s, m)) for s in range(n + 1))
        total += dim - _sd_rank(n, k, m, prime) - _sd_rank(n, k - 1, m + 1, prime)
    return total


@dataclass
class StabilizationReport:
    n: int
    k: int
    values: dict = field(default_factory=dict)
    oracle: int = 0
    stable_from: int | None = None

    @property
    def matches(self) -> bool:
        return self.stable_from is not None

    def as_dict(self):
        return {"n": self.n, "k": self.k, "oracle": self.oracle,
                "values": {str(i): v for i, v in self.values.items()},
                "stable_from": self.stable_from, "matches": self.matches}


def stabilization_report(n: int, k: int, i_range) -> StabilizationReport:
    rep = StabilizationReport(n, k, oracle=betti_oracle(n, k))
    irange = list(i_range)
    for i in irange:
        rep.values[i] = betti(n, k, i)
    for idx, i in enumerate(irange):
        if all(rep.values[j] == rep.oracle for j in irange[idx:]):
            rep.stable_from = i
            break
    return rep
