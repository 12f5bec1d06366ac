"""Exact density parameters: m, m1, m_K, beta, m(H;k), m*(K_r,H;k), Phi.

Every value is a :class:`fractions.Fraction`. Maximisations over subgraphs
run over vertex subsets with all induced edges, since each objective is
increasing in the edge count for a fixed vertex set.

Minimax searches hand integer ranks of the rational values to
:func:`kernels.minimax_rows`; only the order of values matters there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from . import kernels
from .graph import Graph, assignment_from_index, complete, members, popcount

ZERO = Fraction(0)


class DensityError(ValueError):
    """Argument outside the domain of a density parameter."""


def fmt_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


class DensityTable:
    """Per-subset edge counts and densities of one graph.

    ``m[s]`` is the max of ``e_J/v_J`` over nonempty ``J`` inside ``s`` and
    ``m1[s]`` the max of ``e_J/(v_J-1)`` over ``J`` inside ``s`` with at least
    two vertices (0 when ``s`` has fewer than two vertices or no edges).
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.size = 1 << g.n
        self.e = [int(x) for x in kernels.subset_edge_counts(g.adj_array)] if g.n else [0]
        self.card = [popcount(s) for s in range(self.size)]
        self._mk_cache: dict[Fraction, list[Fraction | None]] = {}

    def _closure(self, own) -> list:
        # max over all subsets of s = max(own(s), max over s minus one vertex)
        out = [None] * self.size
        for s in range(self.size):
            best = own(s)
            t = s
            while t:
                b = t & -t
                t ^= b
                sub = out[s ^ b]
                if sub is not None and (best is None or sub > best):
                    best = sub
            out[s] = best
        return out

    @cached_property
    def m(self) -> list[Fraction]:
        vals = self._closure(lambda s: Fraction(self.e[s], self.card[s]) if s else None)
        vals[0] = ZERO
        return vals

    @cached_property
    def m1(self) -> list[Fraction]:
        vals = self._closure(lambda s: Fraction(self.e[s], self.card[s] - 1) if self.card[s] >= 2 else None)
        return [ZERO if v is None else v for v in vals]

    def mk_with(self, c: Fraction) -> list[Fraction | None]:
        """``max (c + e_J) / v_J`` over ``J`` inside ``s`` with ``v_J >= 2``."""
        if c not in self._mk_cache:
            self._mk_cache[c] = self._closure(
                lambda s: (c + self.e[s]) / self.card[s] if self.card[s] >= 2 else None
            )
        return self._mk_cache[c]


@lru_cache(maxsize=256)
def density_table(g: Graph) -> DensityTable:
    return DensityTable(g)


def beta_between(ta: DensityTable, x: int, tb: DensityTable, s: int) -> Fraction:
    """beta(A[x], B[s]) from the two subset tables (both sets nonempty)."""
    ea, eb = ta.e[x], tb.e[s]
    if ea >= 1 and ta.m1[x] <= tb.m1[s]:
        return tb.mk_with(ta.m1[x])[s]
    if eb >= 1 and tb.m1[s] < ta.m1[x]:
        return ta.mk_with(tb.m1[s])[x]
    if ea == 0 and eb >= 1:
        return tb.m[s]
    if eb == 0 and ea >= 1:
        return ta.m[x]
    return ZERO


def _require_vertices(g: Graph, at_least: int, what: str) -> None:
    if g.n < at_least:
        raise DensityError(f"{what} needs a graph with at least {at_least} vertices")


def m_density(h: Graph) -> Fraction:
    _require_vertices(h, 1, "m")
    return density_table(h).m[h.vertices]


def m1_density(h: Graph) -> Fraction:
    _require_vertices(h, 2, "m1")
    return density_table(h).m1[h.vertices]


def mk_density(f: Graph, h: Graph) -> Fraction:
    if f.num_edges == 0 or h.num_edges == 0:
        raise DensityError("m_K needs two graphs with at least one edge")
    m1f, m1h = m1_density(f), m1_density(h)
    if m1f > m1h:
        raise DensityError(f"m_K(F,H) needs m1(F) <= m1(H), got {m1f} > {m1h}")
    return density_table(h).mk_with(m1f)[h.vertices]


def beta(f: Graph, h: Graph) -> Fraction:
    """Threshold parameter for (F,H)_v-Ramsey in G(n,p), total on nonempty graphs."""
    _require_vertices(f, 1, "beta")
    _require_vertices(h, 1, "beta")
    return beta_between(density_table(f), f.vertices, density_table(h), h.vertices)


def phi_exponent(h: Graph, a: Fraction) -> Fraction:
    """Exponent of ``min n^{v_J} p^{e_J}`` over edge-bearing ``J`` at ``p = n^-a``."""
    a = Fraction(a)
    if h.num_edges == 0:
        raise DensityError("Phi needs a graph with at least one edge")
    if a < 0:
        raise DensityError("p-exponent must be nonnegative")
    t = density_table(h)
    return min(t.card[s] - a * t.e[s] for s in range(t.size) if t.e[s] > 0)


@dataclass(frozen=True)
class ThresholdExponent:
    """Threshold ``n^(-1/value)``; ``value == 0`` means threshold 0."""

    value: Fraction
    case: str | None = None
    flagged: bool = False
    note: str = ""

    def __post_init__(self):
        if self.value < 0:
            raise DensityError("threshold exponent must be nonnegative")

    @property
    def p_exponent(self) -> Fraction | None:
        """``a`` with threshold ``n^-a``; None for threshold 0."""
        return None if self.value == 0 else 1 / self.value

    def describe(self) -> str:
        return "0" if self.value == 0 else f"n^(-1/({fmt_fraction(self.value)}))"


def kreuter_exponent(graphs: Sequence[Graph]) -> ThresholdExponent:
    """Random-graph threshold for (H_1,...,H_r)_v-Ramsey, inputs sorted by m1."""
    if len(graphs) < 2:
        raise DensityError("need at least two graphs")
    m1s = [m1_density(g) if g.n >= 2 else ZERO for g in graphs]
    if any(a > b for a, b in zip(m1s, m1s[1:])):
        raise DensityError("graphs must be sorted ascending by m1")
    f, h = graphs[-2], graphs[-1]
    if f.num_edges == 0 or h.num_edges == 0:
        raise DensityError("the two densest graphs must have edges")
    return ThresholdExponent(beta(f, h))


# ---------------------------------------------------------------------------
# partition minimax


def rank_values(values) -> tuple[list[Fraction], dict[Fraction, int]]:
    ordered = sorted(set(values))
    return ordered, {v: i for i, v in enumerate(ordered)}


def solve_rows(rows: list[list[Fraction]], nv: int, group: Sequence[int]) -> tuple[Fraction, tuple[int, ...]]:
    """Min over k-partitions of ``range(nv)`` of the max over nonempty parts
    of ``rows[i][part mask]``; returns the value and the first minimiser."""
    k = len(rows)
    ordered, rank = rank_values(v for row in rows for v in row[1:])
    arr = np.zeros((k, 1 << nv), np.int64)
    for i, row in enumerate(rows):
        arr[i, 1:] = [rank[v] for v in row[1:]]
    best, idx = kernels.minimax_rows(arr, nv, np.asarray(group, np.int64))
    return ordered[int(best)], assignment_from_index(int(idx), nv, k)


def m_k_parts(h: Graph, k: int) -> Fraction:
    """m(H;k): min over k-partitions of H of the max appearance density."""
    return m_k_parts_certificate(h, k)[0]


def m_k_parts_certificate(h: Graph, k: int) -> tuple[Fraction, tuple[int, ...]]:
    _require_vertices(h, 1, "m(H;k)")
    if k < 1:
        raise DensityError("k must be at least 1")
    row = density_table(h).m
    return solve_rows([row] * k, h.n, [0] * k)


@dataclass(frozen=True)
class MStarCertificate:
    value: Fraction
    vector: tuple[int, ...]
    partition: tuple[int, ...]
    per_part_beta: tuple[Fraction | None, ...]

    def to_json(self) -> dict:
        return {
            "value": fmt_fraction(self.value),
            "vector": list(self.vector),
            "partition": [members(p) for p in self.partition],
            "per_part_beta": [None if b is None else fmt_fraction(b) for b in self.per_part_beta],
        }


def clique_vectors(r: int, k: int) -> list[tuple[int, ...]]:
    """Tuples of k nonnegative integers with sum at most r-1, lexicographic."""
    return [v for v in product(range(r), repeat=k) if sum(v) <= r - 1]


class MStarSolver:
    """m*(K_r,H;k) with per-vector minimising partitions.

    ``beta_row(j)[s]`` caches beta(K_{j+1}, H[s]) for every vertex subset.
    """

    def __init__(self, r: int, h: Graph, k: int, prune: bool = True):
        if r < 1:
            raise DensityError("r must be at least 1")
        if k < 2:
            raise DensityError("k must be at least 2")
        _require_vertices(h, 1, "m*")
        self.r, self.h, self.k, self.prune = r, h, k, prune
        self._ht = density_table(h)
        self._kt = density_table(complete(r))
        self._rows: dict[int, list[Fraction]] = {}
        self._parts: dict[tuple[int, ...], tuple[Fraction, tuple[int, ...]]] = {}

    def beta_row(self, j: int) -> list[Fraction]:
        if j not in self._rows:
            x = (1 << (j + 1)) - 1
            self._rows[j] = [ZERO] + [beta_between(self._kt, x, self._ht, s)
                                      for s in range(1, self._ht.size)]
        return self._rows[j]

    def min_partition(self, vector: Sequence[int]) -> tuple[Fraction, tuple[int, ...]]:
        vector = tuple(vector)
        if len(vector) != self.k or any(x < 0 for x in vector) or sum(vector) > self.r - 1:
            raise DensityError(f"invalid clique vector {vector}")
        if vector not in self._parts:
            group = list(vector) if self.prune else list(range(self.k))
            self._parts[vector] = solve_rows([self.beta_row(x) for x in vector], self.h.n, group)
        return self._parts[vector]

    def part_betas(self, vector: Sequence[int], partition: Sequence[int]) -> tuple[Fraction | None, ...]:
        return tuple(self.beta_row(x)[p] if p else None for x, p in zip(vector, partition))

    def certificate(self, vector: Sequence[int]) -> MStarCertificate:
        value, part = self.min_partition(vector)
        return MStarCertificate(value, tuple(vector), part, self.part_betas(vector, part))

    @cached_property
    def best(self) -> MStarCertificate:
        best_vec, best_val = None, None
        for vec in clique_vectors(self.r, self.k):
            val = self.min_partition(vec)[0]
            if best_val is None or val > best_val:
                best_vec, best_val = vec, val
        return self.certificate(best_vec)


def m_star(r: int, h: Graph, k: int, prune: bool = True) -> MStarCertificate:
    return MStarSolver(r, h, k, prune).best


def clique_threshold_formula(s: int, t: int) -> ThresholdExponent:
    """Closed-form m*(K_s,K_t;2) for pairs of cliques, by case.

    Case (ii) with ``t - s == 1`` needs m_K(K_1, K_s), undefined for an
    edgeless K_1; it is read as beta(K_1, K_s) = m(K_s) and flagged.
    """
    if not 3 <= s <= t:
        raise DensityError("need 3 <= s <= t")
    if s == t:
        case, pair = "i", (t - 1, t - 1)
    elif 2 * s >= t + 1:
        case, pair = "ii", (t - s, s)
    elif t % 2 == 0:
        case, pair = "iii", (s, t // 2)
    else:
        case, pair = "iv", ((s + 1) // 2, (t + 1) // 2)
    value = beta(complete(pair[0]), complete(pair[1]))
    flagged = pair[0] == 1
    note = f"beta(K_{pair[0]},K_{pair[1]})"
    if flagged:
        note += " read as beta(K_1,K_s) = m(K_s)"
    return ThresholdExponent(value, case=case, flagged=flagged, note=note)
