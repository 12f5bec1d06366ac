"""Finite simple graphs on at most 63 vertices, stored as adjacency bitmasks.

Vertex sets are plain ``int`` bitmasks (bit ``v`` set iff ``v`` is a member);
an induced partition is a tuple of such masks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

MAX_VERTICES = 63
# brute-force permutation search (canonical codes, automorphisms) stops here
MAX_PERMUTATION_VERTICES = 9


class GraphError(ValueError):
    """Invalid graph construction or graph text."""


def vset(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood bitmask of ``v``. Instances are immutable
    and hashable; equality is labelled equality.
    """

    n: int
    adj: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        adj = tuple(int(a) for a in self.adj) if self.adj else (0,) * self.n
        if len(adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, a in enumerate(adj):
            if a & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if (a >> v) & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in members(a):
                if not (adj[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} uses a vertex index >= {n}")
            if u == v:
                raise GraphError(f"loop edge {u}-{v}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def vertices(self) -> int:
        """The full vertex set as a bitmask."""
        return (1 << self.n) - 1

    @cached_property
    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u] >> (u + 1) << (u + 1))]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    @cached_property
    def adj_array(self) -> np.ndarray:
        arr = np.array(self.adj, dtype=np.int64) if self.n else np.zeros(0, np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def is_complete(self) -> bool:
        return self.num_edges == self.n * (self.n - 1) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# constructors


def complete(t: int) -> Graph:
    return Graph.from_edges(t, combinations(range(t), 2))


def edgeless(t: int) -> Graph:
    return Graph(t)


def complete_bipartite(s: int, t: int) -> Graph:
    return Graph.from_edges(s + t, ((i, s + j) for i in range(s) for j in range(t)))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    labels = [i for i, size in enumerate(sizes) for _ in range(size)]
    n = len(labels)
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if labels[u] != labels[v]))


def cycle(t: int) -> Graph:
    if t < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(t, ((i, (i + 1) % t) for i in range(t)))


def path(t: int) -> Graph:
    return Graph.from_edges(t, ((i, i + 1) for i in range(t - 1)))


def matching(m: int) -> Graph:
    return Graph.from_edges(2 * m, ((2 * i, 2 * i + 1) for i in range(m)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


_FAMILIES = {
    "K": (complete, 1),
    "E": (edgeless, 1),
    "C": (cycle, 1),
    "P": (path, 1),
    "M": (matching, 1),
    "KB": (complete_bipartite, 2),
}


def make_named(family: str, *params: int) -> Graph:
    """Canonical labelled member of a named family.

    ``K t`` complete, ``KB s t`` complete bipartite (token ``Ks,t``), ``C t``
    cycle, ``P t`` path on t vertices, ``M m`` matching with m edges,
    ``E t`` edgeless.
    """
    if family == "K" and len(params) == 2:
        family = "KB"
    if family not in _FAMILIES:
        raise GraphError(f"unknown graph family {family!r}")
    maker, arity = _FAMILIES[family]
    if len(params) != arity:
        raise GraphError(f"family {family!r} takes {arity} parameter(s)")
    if any(p < 0 for p in params):
        raise GraphError("family parameters must be nonnegative")
    size = {"KB": sum(params), "M": 2 * params[0]}.get(family, params[0])
    if size > MAX_VERTICES:
        raise GraphError(f"{family}{params} has more than {MAX_VERTICES} vertices")
    return maker(*params)


# ---------------------------------------------------------------------------
# subsets, partitions, induced subgraphs


def induced_subgraph(g: Graph, s: int) -> Graph:
    """Subgraph induced on ``s``, relabelled order-preservingly to ``0..|s|-1``."""
    verts = members(s & g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        a = 0
        for u in members(g.adj[v] & s):
            a |= 1 << index[u]
        adj.append(a)
    return Graph(len(verts), tuple(adj))


def enumerate_subsets(n: int, min_size: int = 0) -> Iterator[int]:
    """Every subset of ``range(n)`` of size >= ``min_size``, ascending by mask."""
    for s in range(1 << n):
        if popcount(s) >= min_size:
            yield s


def enumerate_k_partitions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All ``k**n`` assignments of ``range(n)`` to ``k`` labelled parts.

    Order is lexicographic in (part of vertex 0, ..., part of vertex n-1),
    the same order the minimax kernel uses for tie-breaking.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    for labels in product(range(k), repeat=n):
        parts = [0] * k
        for v, p in enumerate(labels):
            parts[p] |= 1 << v
        yield tuple(parts)


def assignment_from_index(index: int, n: int, k: int) -> tuple[int, ...]:
    parts = [0] * k
    for v in range(n - 1, -1, -1):
        parts[index % k] |= 1 << v
        index //= k
    return tuple(parts)


# ---------------------------------------------------------------------------
# containment


@dataclass(frozen=True)
class SearchPlan:
    """Placement order and pruning data for one embedding search."""

    order: np.ndarray
    back: np.ndarray
    pdeg: np.ndarray
    inc_from: int


def _plan(pattern: Graph, order: Sequence[int], anchored: bool) -> SearchPlan:
    pos = {v: i for i, v in enumerate(order)}
    back = np.zeros(len(order), np.int64)
    for d, v in enumerate(order):
        for u in members(pattern.adj[v]):
            if pos[u] < d:
                back[d] |= 1 << pos[u]
    pdeg = np.array([pattern.degree(v) for v in order], np.int64)
    m = len(order)
    if pattern.is_complete:
        inc_from = 2 if anchored else 1
    else:
        inc_from = m + 1
    return SearchPlan(np.array(order, np.int64), back, pdeg, inc_from)


@lru_cache(maxsize=4096)
def lex_plan(pattern: Graph) -> SearchPlan:
    return _plan(pattern, list(range(pattern.n)), anchored=False)


def _greedy_order(pattern: Graph, start: int) -> list[int]:
    order = [start]
    placed = 1 << start
    while len(order) < pattern.n:
        best = max(
            (v for v in range(pattern.n) if not (placed >> v) & 1),
            key=lambda v: (popcount(pattern.adj[v] & placed), pattern.degree(v), -v),
        )
        order.append(best)
        placed |= 1 << best
    return order


@lru_cache(maxsize=4096)
def anchored_plans(pattern: Graph) -> tuple[SearchPlan, ...]:
    """One plan per automorphism-orbit representative, that vertex placed first."""
    return tuple(_plan(pattern, _greedy_order(pattern, a), anchored=True)
                 for a in orbit_representatives(pattern))


def contains_copy(host: Graph, pattern: Graph, allowed: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically least embedding of ``pattern`` into ``host[allowed]``.

    Subgraph (not induced) containment. Returns the image of each pattern
    vertex, or None.
    """
    if allowed is None:
        allowed = host.vertices
    allowed &= host.vertices
    if pattern.n == 0:
        return ()
    if pattern.n > popcount(allowed):
        return None
    plan = lex_plan(pattern)
    out = np.zeros(pattern.n, np.int64)
    if kernels.find_embedding(host.adj_array, np.int64(allowed), plan.order, plan.back,
                              plan.pdeg, plan.inc_from, np.int64(allowed), out):
        return tuple(int(x) for x in out)
    return None


def is_embedding(host: Graph, pattern: Graph, emb: Sequence[int], allowed: int | None = None) -> bool:
    """Independent check that ``emb`` maps ``pattern`` injectively into ``host``."""
    if len(emb) != pattern.n or len(set(emb)) != pattern.n:
        return False
    if allowed is not None and any(not (allowed >> x) & 1 for x in emb):
        return False
    if any(not 0 <= x < host.n for x in emb):
        return False
    return all(host.has_edge(emb[u], emb[v]) for u, v in pattern.edges())


# ---------------------------------------------------------------------------
# isomorphism by brute force


@lru_cache(maxsize=None)
def _perm_table(m: int) -> np.ndarray:
    return np.array(list(permutations(range(m))), dtype=np.int8).reshape(-1, m)


@lru_cache(maxsize=None)
def _pair_index(m: int) -> tuple[np.ndarray, np.ndarray]:
    iu, ju = np.triu_indices(m, 1)
    return iu, ju


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def _check_perm_size(g: Graph) -> None:
    if g.n > MAX_PERMUTATION_VERTICES:
        raise GraphError(f"brute-force permutation search capped at {MAX_PERMUTATION_VERTICES} vertices")


@lru_cache(maxsize=65536)
def canonical_code(g: Graph) -> tuple[int, int]:
    """Isomorphism invariant ``(n, code)``: least upper-triangle bit string
    over all relabellings."""
    if g.n <= 1:
        return (g.n, 0)
    _check_perm_size(g)
    if g.num_edges == 0:
        return (g.n, 0)
    a = adjacency_matrix(g)
    perms = _perm_table(g.n)
    iu, ju = _pair_index(g.n)
    bits = a[perms[:, iu], perms[:, ju]]
    weights = (np.int64(1) << np.arange(len(iu) - 1, -1, -1, dtype=np.int64))
    codes = bits.astype(np.int64) @ weights
    return (g.n, int(codes.min()))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return canonical_code(g) == canonical_code(h)


def graph_from_code(n: int, code: int) -> Graph:
    iu, ju = _pair_index(n)
    L = len(iu)
    edges = [(int(iu[i]), int(ju[i])) for i in range(L) if (code >> (L - 1 - i)) & 1]
    return Graph.from_edges(n, edges)


@lru_cache(maxsize=4096)
def automorphisms(g: Graph) -> np.ndarray:
    """All automorphisms as rows of a permutation array (brute force)."""
    if g.n == 0:
        return np.zeros((1, 0), np.int8)
    _check_perm_size(g)
    a = adjacency_matrix(g)
    perms = _perm_table(g.n)
    keep = np.ones(len(perms), dtype=bool)
    for u, v in combinations(range(g.n), 2):
        keep &= a[perms[:, u], perms[:, v]] == a[u, v]
    return perms[keep]


def automorphism_count(g: Graph) -> int:
    return len(automorphisms(g))


def labelled_copy_count(vertex_count: int, pattern: Graph) -> int:
    """Number of edge-distinct copies of ``pattern`` on a fixed vertex set."""
    k = pattern.n
    return math.comb(vertex_count, k) * math.factorial(k) // automorphism_count(pattern)


def orbit_representatives(g: Graph) -> list[int]:
    if g.n > 8:
        return list(range(g.n))
    auts = automorphisms(g)
    seen = 0
    reps = []
    for v in range(g.n):
        if not (seen >> v) & 1:
            reps.append(v)
            for w in set(int(x) for x in auts[:, v]):
                seen |= 1 << w
    return reps


@lru_cache(maxsize=None)
def graph_catalogue(max_vertices: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class on 1..max_vertices vertices.

    Grown by adding a vertex with every possible neighbourhood to each class
    on one fewer vertex and deduplicating by canonical code.
    """
    if max_vertices > 7:
        raise GraphError("catalogue generation is limited to 7 vertices")
    layers = [[edgeless(1)]] if max_vertices >= 1 else []
    for n in range(2, max_vertices + 1):
        codes = {}
        for g in layers[-1]:
            for nb in range(1 << (n - 1)):
                adj = list(g.adj) + [nb]
                for u in members(nb):
                    adj[u] |= 1 << (n - 1)
                h = Graph(n, tuple(adj))
                codes.setdefault(canonical_code(h), None)
        layers.append([graph_from_code(n, c) for (_, c) in sorted(codes)])
    return tuple(g for layer in layers for g in layer)


def complete_multipartite_parts(g: Graph) -> list[int] | None:
    """Parts of ``g`` if it is complete multipartite (non-adjacency is an
    equivalence relation), ordered by least vertex; else None."""
    parts = []
    seen = 0
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        part = g.vertices & ~g.adj[v]
        for u in members(part):
            if (g.vertices & ~g.adj[u]) != part:
                return None
        parts.append(part)
        seen |= part
    return parts
