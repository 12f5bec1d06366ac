"""Bounds on m*(F,H;k) for a general red pattern F.

A partial partition of F is a tuple ``(U_1, ..., U_k)`` of disjoint vertex
masks leaving a nonempty remainder ``W``. All three bounds reduce to the
partition minimax of :func:`densities.solve_rows` with one row per part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Sequence

from .densities import (
    ZERO,
    beta_between,
    clique_vectors,
    density_table,
    fmt_fraction,
    solve_rows,
)
from .graph import Graph, canonical_code, complete, induced_subgraph, members
from .graphio import parse_graph

MAX_BOUND_VERTICES = 8
MAX_RULE_SEARCH_VERTICES = 5

State = tuple[int, ...]


class BoundsError(ValueError):
    pass


def _check_sizes(f: Graph, h: Graph, k: int) -> None:
    if k < 2:
        raise BoundsError("k must be at least 2")
    if f.n < 1 or h.n < 1:
        raise BoundsError("graphs must be nonempty")
    if f.n > MAX_BOUND_VERTICES or h.n > MAX_BOUND_VERTICES:
        raise BoundsError(f"bounds enumerate graphs with at most {MAX_BOUND_VERTICES} vertices")


def remainder(f: Graph, state: State) -> int:
    used = 0
    for u in state:
        used |= u
    return f.vertices & ~used


def partial_partitions(f: Graph, k: int):
    """Every partial partition of F, lexicographic in the label tuple with
    label ``k`` meaning the remainder W."""
    for labels in product(range(k + 1), repeat=f.n):
        if k not in labels:
            continue
        parts = [0] * k
        for v, lab in enumerate(labels):
            if lab < k:
                parts[lab] |= 1 << v
        yield tuple(parts)


class BetaGrid:
    """beta(F[X], H[s]) rows, one list over all H-subsets ``s`` per F-subset ``X``."""

    def __init__(self, f: Graph, h: Graph):
        self.f, self.h = f, h
        self._tf, self._th = density_table(f), density_table(h)
        self._rows: dict[int, list[Fraction]] = {}
        self._solved: dict[tuple, Fraction] = {}

    def row(self, x: int) -> list[Fraction]:
        if x not in self._rows:
            self._rows[x] = [ZERO] + [beta_between(self._tf, x, self._th, s)
                                      for s in range(1, self._th.size)]
        return self._rows[x]

    def min_row(self, xs: Sequence[int]) -> list[Fraction]:
        rows = [self.row(x) for x in xs]
        return [min(col) for col in zip(*rows)]

    def solve(self, rows: list[list[Fraction]], key=None):
        if key is not None and key in self._solved:
            return self._solved[key], None
        ids = {}
        group = [ids.setdefault(tuple(r), len(ids)) for r in rows]
        value, part = solve_rows(rows, self.h.n, group)
        if key is not None:
            self._solved[key] = value
        return value, part


@dataclass(frozen=True)
class BoundCertificate:
    value: Fraction
    state: State | None
    choice: tuple[int, ...] | None
    h_partition: tuple[int, ...] | None
    note: str = ""

    def to_json(self) -> dict:
        out = {"value": fmt_fraction(self.value)}
        if self.state is not None:
            out["partial_partition"] = [members(u) for u in self.state]
        if self.choice is not None:
            out["extension"] = list(self.choice)
        if self.h_partition is not None:
            out["h_partition"] = [members(p) for p in self.h_partition]
        if self.note:
            out["note"] = self.note
        return out


def _best_choices(grid: BetaGrid, state: State, w: int, h_partition: tuple[int, ...]) -> tuple[int, ...]:
    choice = []
    for u_i, s in zip(state, h_partition):
        cands = members(w)
        choice.append(min(cands, key=lambda u: (grid.row(u_i | 1 << u)[s] if s else ZERO, u)))
    return tuple(choice)


def upper_bound_partial(f: Graph, h: Graph, k: int) -> BoundCertificate:
    """Max over partial partitions, min over H-partitions and extension
    vertices, of the max over nonempty parts of beta(F[U_i + u_i], H_i)."""
    _check_sizes(f, h, k)
    grid = BetaGrid(f, h)
    best_val, best_state = None, None
    for state in partial_partitions(f, k):
        w = remainder(f, state)
        keyparts = tuple(sorted((u, w) for u in state))
        rows = [grid.min_row([u | 1 << x for x in members(w)]) for u in state]
        val, _ = grid.solve(rows, key=("partial", keyparts))
        if best_val is None or val > best_val:
            best_val, best_state = val, state
    w = remainder(f, best_state)
    rows = [grid.min_row([u | 1 << x for x in members(w)]) for u in best_state]
    _, hpart = grid.solve(rows)
    return BoundCertificate(best_val, best_state, _best_choices(grid, best_state, w, hpart), hpart)


# ---------------------------------------------------------------------------
# extension rules


@dataclass
class ExtensionRule:
    """Deterministic map from a partial partition to one remainder vertex per part."""

    name: str
    func: Callable[[State], tuple[int, ...]] | None = None
    table: dict[State, tuple[int, ...]] = field(default_factory=dict)

    def __call__(self, state: State) -> tuple[int, ...]:
        if state in self.table:
            return self.table[state]
        if self.func is None:
            raise BoundsError(f"rule {self.name!r} has no entry for {[members(u) for u in state]}")
        return self.func(state)

    @classmethod
    def lowest(cls, f: Graph, k: int) -> "ExtensionRule":
        def rule(state):
            w = remainder(f, state)
            return (members(w)[0],) * k
        return cls("lowest-index-in-W", rule)

    @classmethod
    def greedy_min_beta(cls, f: Graph, h: Graph, k: int) -> "ExtensionRule":
        grid = BetaGrid(f, h)

        def rule(state):
            w = members(remainder(f, state))
            return tuple(min(w, key=lambda x: (grid.row(u | 1 << x)[h.vertices], x)) for u in state)
        return cls("greedy-min-beta", rule)

    @classmethod
    def named(cls, name: str, f: Graph, h: Graph, k: int) -> "ExtensionRule":
        if name in ("lowest", "lowest-index-in-W"):
            return cls.lowest(f, k)
        if name in ("greedy", "greedy-min-beta"):
            return cls.greedy_min_beta(f, h, k)
        raise BoundsError(f"unknown extension rule {name!r}")

    def to_json(self) -> dict:
        return {"name": self.name,
                "entries": [{"U": [members(u) for u in s], "u": list(c)} for s, c in sorted(self.table.items())]}

    @classmethod
    def from_json(cls, data: dict, f: Graph, k: int) -> "ExtensionRule":
        table = {}
        for entry in data["entries"]:
            state = tuple(sum(1 << v for v in part) for part in entry["U"])
            if len(state) != k or len(entry["u"]) != k:
                raise BoundsError("rule entry does not have k parts")
            table[state] = tuple(int(x) for x in entry["u"])
        fallback = data.get("fallback")
        func = cls.lowest(f, k).func if fallback in ("lowest", "lowest-index-in-W") else None
        return cls(data.get("name", "table"), func, table)


def _children(f: Graph, state: State, choice: tuple[int, ...]) -> list[State]:
    w = remainder(f, state)
    out = []
    for i, u in enumerate(choice):
        if not (w >> u) & 1:
            raise BoundsError(f"extension vertex {u} is not in the remainder")
        if w & ~(1 << u):
            out.append(state[:i] + (state[i] | 1 << u,) + state[i + 1:])
    return out


def feasible_family(f: Graph, k: int, rule: ExtensionRule) -> frozenset[State]:
    """Least family containing the empty state and closed under extending one
    part by the rule's vertex while the remainder stays nonempty."""
    if f.n < 1:
        raise BoundsError("F must be nonempty")
    start = (0,) * k
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        for child in _children(f, state, rule(state)):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return frozenset(seen)


def _extension_rows(grid: BetaGrid, state: State, choice: tuple[int, ...]):
    xs = [u | 1 << c for u, c in zip(state, choice)]
    return [grid.row(x) for x in xs], ("ext", tuple(sorted(xs)))


def upper_bound_extension(f: Graph, h: Graph, k: int, rule: ExtensionRule) -> BoundCertificate:
    """Max over the rule's feasible family of the minimax of
    beta(F[U_i + f(U)_i], H_i)."""
    _check_sizes(f, h, k)
    grid = BetaGrid(f, h)
    best_val, best_state = None, None
    for state in sorted(feasible_family(f, k, rule)):
        rows, key = _extension_rows(grid, state, rule(state))
        val, _ = grid.solve(rows, key=key)
        if best_val is None or val > best_val:
            best_val, best_state = val, state
    choice = rule(best_state)
    rows, _ = _extension_rows(grid, best_state, choice)
    _, hpart = grid.solve(rows)
    boundary = len(members(remainder(f, best_state))) == 1
    return BoundCertificate(best_val, best_state, choice, hpart,
                            note="maximiser has |W| = 1" if boundary else "")


def best_extension_rule(f: Graph, h: Graph, k: int) -> tuple[Fraction, ExtensionRule]:
    """Minimum of :func:`upper_bound_extension` over all extension rules.

    Expensive; limited to F with at most 5 vertices. A rule's value is the
    max over its reachable states, and the rule at one state only affects
    the states below it, so the best value from each state is
    ``min over choices of max(own value, best values of the children)``.
    The returned table holds the optimal choice at every reachable state.
    """
    _check_sizes(f, h, k)
    if f.n > MAX_RULE_SEARCH_VERTICES:
        raise BoundsError(f"exhaustive rule search is limited to {MAX_RULE_SEARCH_VERTICES} vertices")
    grid = BetaGrid(f, h)
    memo: dict[State, tuple[Fraction, tuple[int, ...]]] = {}

    def value(state: State) -> Fraction:
        if state in memo:
            return memo[state][0]
        w = members(remainder(f, state))
        best, best_choice = None, None
        for choice in product(w, repeat=k):
            rows, key = _extension_rows(grid, state, choice)
            val, _ = grid.solve(rows, key=key)
            if best is not None and val >= best:
                continue
            for child in _children(f, state, choice):
                val = max(val, value(child))
                if best is not None and val >= best:
                    break
            if best is None or val < best:
                best, best_choice = val, choice
        memo[state] = (best, best_choice)
        return best

    total = value((0,) * k)
    table = {}
    stack = [(0,) * k]
    while stack:
        state = stack.pop()
        if state in table:
            continue
        table[state] = memo[state][1]
        stack.extend(_children(f, state, table[state]))
    return total, ExtensionRule("exhaustive-optimum", ExtensionRule.lowest(f, k).func, table)


# ---------------------------------------------------------------------------
# k-covers


@dataclass(frozen=True)
class KCover:
    families: tuple[tuple[Graph, ...], ...]

    @property
    def k(self) -> int:
        return len(self.families)

    @cached_property
    def codes(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(canonical_code(g) for g in fam) for fam in self.families)

    @classmethod
    def from_json(cls, data) -> "KCover":
        fams = data["families"] if isinstance(data, dict) else data
        return cls(tuple(tuple(parse_graph(t) if isinstance(t, str) else t for t in fam) for fam in fams))

    @classmethod
    def load(cls, path) -> "KCover":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def canonical_clique_covers(r: int, k: int) -> list[KCover]:
    """Covers ({K_{r_i+1}, ..., K_r})_i of K_r with sum r_i = r - 1."""
    out = []
    for vec in clique_vectors(r, k):
        if sum(vec) == r - 1:
            out.append(KCover(tuple(tuple(complete(j) for j in range(x + 1, r + 1)) for x in vec)))
    return out


def is_k_cover(f: Graph, cover: KCover) -> bool:
    """Every k-partition of V(F) has a part whose induced graph lies in its family."""
    if any(g.n == 0 for fam in cover.families for g in fam):
        raise BoundsError("cover members must be nonempty")
    k = cover.k
    codes = {}
    for labels in product(range(k), repeat=f.n):
        parts = [0] * k
        for v, lab in enumerate(labels):
            parts[lab] |= 1 << v
        hit = False
        for i, u in enumerate(parts):
            if not u:
                continue
            if u not in codes:
                codes[u] = canonical_code(induced_subgraph(f, u))
            if codes[u] in cover.codes[i]:
                hit = True
                break
        if not hit:
            return False
    return True


def lower_bound_cover(f: Graph, h: Graph, k: int, cover: KCover) -> BoundCertificate:
    """Min over H-partitions of max over nonempty parts of the min over the
    part's cover family of beta(F', H_i)."""
    _check_sizes(f, h, k)
    if cover.k != k:
        raise BoundsError(f"cover has {cover.k} families, expected {k}")
    if not is_k_cover(f, cover):
        raise BoundsError("not a k-cover of F")
    th = density_table(h)
    rows = []
    for fam in cover.families:
        per = [[ZERO] + [beta_between(density_table(g), g.vertices, th, s) for s in range(1, th.size)]
               for g in fam]
        rows.append([min(col) for col in zip(*per)])
    ids = {}
    value, hpart = solve_rows(rows, h.n, [ids.setdefault(tuple(r), len(ids)) for r in rows])
    return BoundCertificate(value, None, None, hpart)


def best_cover_bound(f: Graph, h: Graph, k: int, covers: Sequence[KCover]) -> tuple[BoundCertificate, int]:
    best, best_i = None, -1
    for i, cover in enumerate(covers):
        cert = lower_bound_cover(f, h, k, cover)
        if best is None or cert.value > best.value:
            best, best_i = cert, i
    if best is None:
        raise BoundsError("no covers supplied")
    return best, best_i
