"""Admissible graphs with ordered edges, and their signed canonical forms.

Vertices are stored as integers: external vertex ``k`` (1-based label) is
``k - 1`` and internal vertex ``j`` is ``n_external + j - 1``.  Edges are
undirected and kept as ``(min, max)`` pairs; the position of an edge in the
list is the orientation datum, so reordering the list by a permutation
multiplies the generator by the sign of that permutation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

__all__ = [
    "OrientedGraph",
    "MalformedGraph",
    "NotAdmissible",
    "unit",
    "alpha",
    "is_admissible",
    "canonicalize",
    "permutation_sign",
    "serialize",
    "parse",
    "ParseError",
]


class MalformedGraph(ValueError):
    """An endpoint index is out of range."""


class NotAdmissible(ValueError):
    """An operation that requires an admissible graph got something else."""


@dataclass(frozen=True, order=True)
class OrientedGraph:
    n_external: int
    n_internal: int
    edges: tuple[tuple[int, int], ...]
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        if self.n_external < 1 or self.n_internal < 0:
            raise MalformedGraph(
                f"bad vertex counts n={self.n_external} m={self.n_internal}")
        nv = self.n_external + self.n_internal
        norm = []
        for e in self.edges:
            a, b = e
            if not (0 <= a < nv and 0 <= b < nv):
                raise MalformedGraph(f"edge {e} out of range for {nv} vertices")
            norm.append((a, b) if a <= b else (b, a))
        object.__setattr__(self, "edges", tuple(norm))
        # graphs are dictionary keys in every hot loop
        object.__setattr__(self, "_hash", hash((self.n_external, self.n_internal, self.edges)))

    def __hash__(self):
        return self._hash

    @property
    def n_vertices(self) -> int:
        return self.n_external + self.n_internal

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def degree(self) -> int:
        return len(self.edges) - 2 * self.n_internal

    def is_external(self, v: int) -> bool:
        return v < self.n_external

    def valences(self) -> list[int]:
        val = [0] * self.n_vertices
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def reorder(self, order) -> OrientedGraph:
        """The same graph with edges listed as ``[edges[p] for p in order]``."""
        return OrientedGraph(self.n_external, self.n_internal,
                             tuple(self.edges[p] for p in order))

    def relabel_internal(self, perm) -> OrientedGraph:
        """Rename internal vertex ``j`` (0-based) to ``perm[j]``."""
        n = self.n_external
        mp = list(range(n)) + [n + p for p in perm]
        return OrientedGraph(n, self.n_internal,
                             tuple((mp[a], mp[b]) for a, b in self.edges))

    def __str__(self):
        return serialize(self)


def unit(n: int) -> OrientedGraph:
    """The graph on ``n`` external vertices with no edges."""
    return OrientedGraph(n, 0, ())


def alpha(n: int, *pairs: tuple[int, int]) -> OrientedGraph:
    """Product of single-edge graphs ``alpha_ij`` (1-based labels), in order."""
    return OrientedGraph(n, 0, tuple((i - 1, j - 1) for i, j in pairs))


def is_admissible(g: OrientedGraph) -> bool:
    n, nv = g.n_external, g.n_vertices
    edges = g.edges
    if any(a == b for a, b in edges):
        return False
    if len(set(edges)) != len(edges):
        return False
    if g.n_internal == 0:
        return True
    val = g.valences()
    if any(val[v] < 3 for v in range(n, nv)):
        return False
    adj = [[] for _ in range(nv)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * nv
    stack = list(range(n))
    for v in stack:
        seen[v] = True
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def permutation_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq`` (entries distinct)."""
    seq = list(seq)
    inv = 0
    for i in range(len(seq)):
        si = seq[i]
        for j in range(i + 1, len(seq)):
            if seq[j] < si:
                inv += 1
    return -1 if inv & 1 else 1


def _internal_cells(g: OrientedGraph):
    """Internal vertices grouped by an isomorphism-invariant, cells in order."""
    n, nv = g.n_external, g.n_vertices
    nbrs = [[] for _ in range(nv)]
    for a, b in g.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    val = [len(x) for x in nbrs]
    inv0 = {}
    for v in range(n, nv):
        ext = tuple(sorted(w for w in nbrs[v] if w < n))
        inv0[v] = (val[v], ext)
    # one round of refinement by neighbour invariants
    inv = {}
    for v in range(n, nv):
        inv[v] = (inv0[v], tuple(sorted(inv0[w] for w in nbrs[v] if w >= n)))
    cells = {}
    for v in range(n, nv):
        cells.setdefault(inv[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


@lru_cache(maxsize=1 << 20)
def _canonical(g: OrientedGraph):
    n = g.n_external
    cells = _internal_cells(g)
    best = None
    best_signs = set()
    per_cell = [list(itertools.permutations(c)) for c in cells]
    targets = []
    pos = n
    for c in cells:
        targets.append(list(range(pos, pos + len(c))))
        pos += len(c)
    mp = list(range(g.n_vertices))
    for choice in itertools.product(*per_cell):
        for cell_perm, tgt in zip(choice, targets):
            for v, t in zip(cell_perm, tgt):
                mp[v] = t
        rel = [(mp[a], mp[b]) if mp[a] < mp[b] else (mp[b], mp[a])
               for a, b in g.edges]
        key = tuple(sorted(rel))
        if best is None or key < best:
            best = key
            best_signs = {permutation_sign(rel)}
        elif key == best:
            best_signs.add(permutation_sign(rel))
    if len(best_signs) > 1:
        return None
    return OrientedGraph(n, g.n_internal, best), best_signs.pop()


def canonicalize(g: OrientedGraph):
    """Signed canonical representative of ``g``.

    Returns ``(canonical_graph, sign)`` with ``g == sign * canonical_graph``
    in G(n), or ``None`` when ``g`` has an automorphism acting on its edges by
    an odd permutation (so ``g == -g == 0``).
    """
    if not is_admissible(g):
        raise NotAdmissible(f"cannot canonicalize non-admissible graph {g}")
    return _canonical(g)


# -- text serialization ----------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _vname(g: OrientedGraph, v: int) -> str:
    n = g.n_external
    return f"E{v + 1}" if v < n else f"I{v - n + 1}"


def serialize(g: OrientedGraph) -> str:
    body = ",".join(f"({_vname(g, a)},{_vname(g, b)})" for a, b in g.edges)
    return f"n={g.n_external} m={g.n_internal} edges=[{body}]"


_HEAD = re.compile(r"\s*n=(\d+)\s+m=(\d+)\s+edges=\[")
_EDGE = re.compile(r"\(([EI])(\d+),([EI])(\d+)\)")


def parse(text: str) -> OrientedGraph:
    mo = _HEAD.match(text)
    if not mo:
        raise ParseError("expected 'n=<n> m=<m> edges=['", 0)
    n, m = int(mo.group(1)), int(mo.group(2))
    pos = mo.end()
    edges = []

    def vertex(kind, idx, at):
        idx = int(idx)
        if kind == "E":
            if not 1 <= idx <= n:
                raise ParseError(f"external label E{idx} out of range", at)
            return idx - 1
        if not 1 <= idx <= m:
            raise ParseError(f"internal label I{idx} out of range", at)
        return n + idx - 1

    while True:
        if pos < len(text) and text[pos] == "]":
            pos += 1
            break
        if edges:
            if pos >= len(text) or text[pos] != ",":
                raise ParseError("expected ',' or ']'", pos)
            pos += 1
        em = _EDGE.match(text, pos)
        if not em:
            raise ParseError("expected edge '(X<k>,X<k>)'", pos)
        edges.append((vertex(em.group(1), em.group(2), em.start(1)),
                      vertex(em.group(3), em.group(4), em.start(3))))
        pos = em.end()
    rest = text[pos:]
    if rest.strip():
        raise ParseError("trailing characters", pos + len(rest) - len(rest.lstrip()))
    try:
        return OrientedGraph(n, m, tuple(edges))
    except MalformedGraph as exc:
        raise ParseError(str(exc), 0) from None
