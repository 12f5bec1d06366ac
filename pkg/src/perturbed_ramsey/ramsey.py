"""Exact vertex-Ramsey decisions with checkable certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .graph import Graph, anchored_plans, canonical_code, contains_copy, vset

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class RamseyVerdict:
    """Outcome of :func:`decide_ramsey`.

    ``status`` is ``"ramsey"``, ``"not_ramsey"`` (``witness`` is an avoiding
    colouring) or ``"unknown"`` (node budget exhausted).
    """

    status: str
    witness: tuple[int, ...] | None
    nodes: int

    @property
    def is_ramsey(self) -> bool | None:
        return None if self.status == "unknown" else self.status == "ramsey"

    def to_json(self) -> dict:
        out = {"status": self.status, "nodes_explored": self.nodes}
        if self.status != "unknown":
            out["is_ramsey"] = self.status == "ramsey"
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class FamilyColouring:
    """Outcome of :func:`decide_family_colouring`: status ``"found"``,
    ``"impossible"`` or ``"unknown"``."""

    status: str
    colouring: tuple[int, ...] | None
    nodes: int


def verify_colouring(g: Graph, patterns: Sequence[Graph], colouring: Sequence[int]) -> bool:
    """True iff no colour class ``i`` contains a copy of ``patterns[i]``."""
    if len(colouring) != g.n:
        raise ValueError("colouring must assign every vertex")
    if any(not 0 <= c < len(patterns) for c in colouring):
        raise ValueError("colour index out of range")
    for i, pat in enumerate(patterns):
        cls = vset(v for v, c in enumerate(colouring) if c == i)
        if contains_copy(g, pat, cls) is not None:
            return False
    return True


def _pack(families: Sequence[Sequence[Graph]]):
    colours, offs, lens, incs = [], [], [], []
    orders, backs, pdegs = [], [], []
    off = 0
    for c, fam in enumerate(families):
        for pat in sorted(fam, key=lambda p: (p.n, p.num_edges)):
            if pat.n == 0:
                raise ValueError("patterns must have at least one vertex")
            for plan in anchored_plans(pat):
                colours.append(c)
                offs.append(off)
                lens.append(pat.n)
                incs.append(plan.inc_from)
                orders.append(plan.order)
                backs.append(plan.back)
                pdegs.append(plan.pdeg)
                off += pat.n
    cat = (lambda xs: np.concatenate(xs).astype(np.int64)) if orders else (lambda xs: np.zeros(0, np.int64))
    arr = lambda xs: np.array(xs, np.int64)
    return arr(colours), arr(offs), arr(lens), arr(incs), cat(orders), cat(backs), cat(pdegs)


def _search(g: Graph, families: Sequence[Sequence[Graph]], budget: int) -> tuple[int, tuple[int, ...] | None, int]:
    if budget <= 0:
        raise ValueError("budget must be positive")
    ncol = len(families)
    vorder = np.array(sorted(range(g.n), key=lambda v: (-g.degree(v), v)), np.int64)
    codes = [sorted(canonical_code(p) if p.n <= 9 else (p.n, p.adj) for p in fam) for fam in families]
    fix_first = ncol >= 2 and all(c == codes[0] for c in codes)
    out = np.zeros(max(g.n, 1), np.int64)
    status, nodes = kernels.colour_search(
        g.adj_array, ncol, vorder, *_pack(families), np.int64(budget), fix_first, out
    )
    witness = tuple(int(x) for x in out[:g.n]) if status == kernels.FOUND else None
    return int(status), witness, int(nodes)


def decide_ramsey(g: Graph, patterns: Sequence[Graph], budget: int = DEFAULT_BUDGET) -> RamseyVerdict:
    """Decide whether every ``len(patterns)``-colouring of ``g`` has a copy of
    ``patterns[i]`` in colour ``i`` for some ``i``."""
    if not patterns:
        raise ValueError("need at least one pattern")
    status, witness, nodes = _search(g, [[p] for p in patterns], budget)
    if status == kernels.FOUND:
        return RamseyVerdict("not_ramsey", witness, nodes)
    if status == kernels.EXHAUSTED:
        return RamseyVerdict("ramsey", None, nodes)
    return RamseyVerdict("unknown", None, nodes)


def decide_family_colouring(g: Graph, red_family: Sequence[Graph], blue_family: Sequence[Graph],
                            budget: int = DEFAULT_BUDGET) -> FamilyColouring:
    """Red/blue colouring (0 = red, 1 = blue) with no red member of
    ``red_family`` and no blue member of ``blue_family``."""
    if not red_family or not blue_family:
        raise ValueError("families must be nonempty")
    status, witness, nodes = _search(g, [list(red_family), list(blue_family)], budget)
    return FamilyColouring({kernels.FOUND: "found", kernels.EXHAUSTED: "impossible"}.get(status, "unknown"),
                           witness, nodes)
