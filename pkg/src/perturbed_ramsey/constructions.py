"""The avoiding-colouring builder and the monochromatic-structure finder on
complete k-partite hosts.

Colour 0 is red (clique side), colour 1 is blue (H side). On a complete
k-partite host every cross-part pair is a host edge, so common neighbourhoods
of found pieces are whole parts; the shrinking step is still carried out and
checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .densities import MStarSolver, beta
from .graph import (
    Graph,
    complete,
    complete_multipartite_parts,
    contains_copy,
    graph_catalogue,
    induced_subgraph,
    is_embedding,
    members,
    vset,
)
from .perturbation import PerturbedInstance
from .ramsey import DEFAULT_BUDGET, decide_family_colouring, verify_colouring

RED, BLUE = 0, 1


class HostError(ValueError):
    """Host is not complete k-partite with the requested number of parts."""


def host_parts(instance: PerturbedInstance, k: int | None = None) -> list[int]:
    parts = complete_multipartite_parts(instance.host)
    if parts is None or len(parts) < 2:
        raise HostError("host is not complete multipartite")
    if k is not None and len(parts) != k:
        raise HostError(f"host has {len(parts)} parts, expected {k}")
    return parts


@lru_cache(maxsize=64)
def subgraph_classes(h: Graph) -> tuple[Graph, ...]:
    """Isomorphism classes of nonempty (not necessarily induced) subgraphs of ``h``."""
    if h.n > 7:
        raise ValueError("subgraph family enumeration is limited to 7 vertices")
    return tuple(g for g in graph_catalogue(h.n) if g.num_edges <= h.num_edges
                 and contains_copy(h, g) is not None)


def minimal_members(family: Sequence[Graph]) -> list[Graph]:
    """Members with no other member as a proper subgraph; avoiding these
    avoids the whole family."""
    fam = sorted(family, key=lambda g: (g.n, g.num_edges))
    out: list[Graph] = []
    for g in fam:
        if not any(contains_copy(g, m) is not None for m in out):
            out.append(g)
    return out


def blue_family(r_i: int, h: Graph, threshold) -> list[Graph]:
    """Minimal members of {H' nonempty subgraph of H : beta(K_{r_i+1}, H') >= threshold}."""
    clique = complete(r_i + 1)
    fam = [g for g in subgraph_classes(h) if beta(clique, g) >= threshold]
    return minimal_members(fam)


@dataclass
class ZeroColouringResult:
    """``status``: ``"colouring"`` (``colouring`` set and verified),
    ``"impossible"`` (some part has no admissible colouring) or ``"unknown"``."""

    status: str
    colouring: tuple[int, ...] | None
    vector: tuple[int, ...]
    part_status: list[str] = field(default_factory=list)
    verified: bool = False

    def to_json(self) -> dict:
        return {
            "outcome": self.status,
            "witness": None if self.colouring is None else list(self.colouring),
            "vector": list(self.vector),
            "parts": self.part_status,
            "verified": self.verified,
        }


def build_zero_colouring(instance: PerturbedInstance, r: int, h: Graph, k: int,
                         budget: int = DEFAULT_BUDGET) -> ZeroColouringResult:
    """Colour each part with no red K_{r_i+1} and no blue member of the part's
    family, using the maximising clique vector of m*(K_r,H;k)."""
    parts = host_parts(instance, k)
    cert = MStarSolver(r, h, k).best
    if cert.value <= 0:
        raise ValueError("m*(K_r,H;k) is 0: every dense host is already Ramsey")
    colouring = [BLUE] * instance.n
    statuses = []
    for part, r_i in zip(parts, cert.vector):
        verts = members(part)
        sub = induced_subgraph(instance.union, part)
        res = decide_family_colouring(sub, [complete(r_i + 1)], blue_family(r_i, h, cert.value), budget)
        statuses.append(res.status)
        if res.status != "found":
            continue
        for local, v in enumerate(verts):
            colouring[v] = res.colouring[local]
    if "impossible" in statuses:
        return ZeroColouringResult("impossible", None, cert.vector, statuses)
    if "unknown" in statuses:
        return ZeroColouringResult("unknown", None, cert.vector, statuses)
    ok = verify_colouring(instance.union, [complete(r), h], colouring)
    if not ok:
        raise AssertionError("assembled colouring has a red K_r or a blue H")
    return ZeroColouringResult("colouring", tuple(colouring), cert.vector, statuses, True)


def per_part_ramsey_step(part_edges: Graph, colouring: Sequence[int], allowed: int,
                         clique_size: int, piece: Graph) -> tuple[str, tuple[int, ...] | None]:
    """Blue copy of ``piece`` among blue vertices of ``allowed``, else a red
    ``K_clique_size`` among red ones, else ``("neither", None)``."""
    blue = allowed & vset(v for v in members(allowed) if colouring[v] == BLUE)
    red = allowed & ~blue
    emb = contains_copy(part_edges, piece, blue)
    if emb is not None:
        return "blue", emb
    clique = contains_copy(part_edges, complete(clique_size), red)
    if clique is not None:
        return "red", clique
    return "neither", None


@dataclass
class FinderResult:
    """``outcome``: ``"red_clique"``, ``"blue_h"`` or ``"failure"``.

    ``embedding`` maps clique (resp. H) vertices to host vertices.
    """

    outcome: str
    embedding: tuple[int, ...] | None
    outer_iterations: int
    steps: int
    verified: bool
    trace: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness": None if self.embedding is None else list(self.embedding),
            "steps": self.steps,
            "outer_iterations": self.outer_iterations,
            "verified": self.verified,
            "trace": self.trace,
        }


def verify_red_clique(g: Graph, colouring: Sequence[int], verts: Sequence[int], r: int) -> bool:
    return (len(set(verts)) == r == len(verts)
            and all(colouring[v] == RED for v in verts)
            and all(g.has_edge(u, v) for i, u in enumerate(verts) for v in verts[i + 1:]))


def verify_blue_copy(g: Graph, colouring: Sequence[int], h: Graph, emb: Sequence[int]) -> bool:
    return is_embedding(g, h, emb) and all(colouring[v] == BLUE for v in emb)


def find_monochromatic(instance: PerturbedInstance, colouring: Sequence[int], r: int, h: Graph,
                       k: int | None = None) -> FinderResult:
    """Grow red cliques part by part or assemble a blue H from per-part pieces,
    following the minimising partition for the current clique vector."""
    parts = host_parts(instance, k)
    k = len(parts)
    if len(colouring) != instance.n or any(c not in (RED, BLUE) for c in colouring):
        raise ValueError("colouring must be a total red/blue colouring")
    solver = MStarSolver(r, h, k)
    g = instance.union
    rand = instance.random_part
    cur = list(parts)
    rvec = [0] * k
    red_sets: list[tuple[int, ...]] = [()] * k
    outer = steps = 0
    trace: list[dict] = []

    def shrink(found: Sequence[int], i: int) -> None:
        common = g.vertices
        for v in found:
            common &= instance.host.adj[v]
        for j in range(k):
            if j != i:
                new = cur[j] & common
                if new != cur[j]:
                    raise AssertionError("common host neighbourhood is not the whole part")
                cur[j] = new

    while sum(rvec) <= r - 1:
        outer += 1
        if outer > r:
            raise AssertionError("outer loop exceeded r iterations")
        _, partition = solver.min_partition(rvec)
        pieces: list[tuple[int, ...] | None] = [None] * k
        grew = False
        for i in range(k):
            if partition[i] == 0:
                continue
            steps += 1
            piece = induced_subgraph(h, partition[i])
            kind, found = per_part_ramsey_step(rand, colouring, cur[i], rvec[i] + 1, piece)
            trace.append({"vector": list(rvec), "part": i, "piece": members(partition[i]), "found": kind})
            if kind == "neither":
                return FinderResult("failure", None, outer, steps, False, trace)
            shrink(found, i)
            if kind == "blue":
                pieces[i] = found
            else:
                red_sets[i] = found
                rvec[i] += 1
                grew = True
                break
        if not grew:
            emb = [0] * h.n
            for i in range(k):
                for hv, x in zip(members(partition[i]), pieces[i] or ()):
                    emb[hv] = x
            ok = verify_blue_copy(g, colouring, h, emb)
            return FinderResult("blue_h", tuple(emb), outer, steps, ok, trace)
    verts = tuple(sorted(v for s in red_sets for v in s))[:r]
    ok = verify_red_clique(g, colouring, verts, r)
    if steps > r * k:
        raise AssertionError("finder exceeded r*k part steps")
    return FinderResult("red_clique", verts, outer, steps, ok, trace)
