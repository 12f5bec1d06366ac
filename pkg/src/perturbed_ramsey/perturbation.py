"""Seeded G(n,p) sampling and perturbed instances G_n + G(n,p).

One uniform is drawn per vertex pair from a Philox stream keyed by
``(master, stream)``; pair ``(i, j)`` with ``i < j`` uses position
``index_of(i, j)`` in lexicographic pair order. Thresholding the same
uniforms at several ``p`` gives coupled, edge-wise nested samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .densities import fmt_fraction
from .graph import Graph, GraphError, MAX_VERTICES, complete_multipartite

GENERATOR_VERSION = "philox-pairs-1"
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    master: int
    stream: int = 0

    def key(self) -> np.ndarray:
        return np.array([self.master & _MASK64, self.stream & _MASK64], dtype=np.uint64)


def pair_uniforms(n: int, seed: Seed) -> np.ndarray:
    """One uniform in [0, 1) per pair ``i < j``, lexicographic pair order."""
    gen = np.random.Generator(np.random.Philox(key=seed.key()))
    return gen.random(n * (n - 1) // 2)


def graph_from_pair_mask(n: int, keep: np.ndarray) -> Graph:
    iu, ju = np.triu_indices(n, 1)
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def sample_gnp(n: int, p: float, seed: Seed) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    if n > MAX_VERTICES:
        raise GraphError(f"at most {MAX_VERTICES} vertices")
    return graph_from_pair_mask(n, pair_uniforms(n, seed) < p)


def kpartite_sizes(n: int, k: int) -> list[int]:
    return [n // k + (1 if i < n % k else 0) for i in range(k)]


def make_host(kind: str, n: int, k: int = 2) -> Graph:
    """Dense host: ``"kpartite"`` (balanced complete k-partite, contiguous
    parts, larger parts first) or ``"empty"``."""
    if kind == "kpartite":
        if k < 2 or n < k:
            raise ValueError("k-partite host needs k >= 2 and n >= k")
        return complete_multipartite(kpartite_sizes(n, k))
    if kind == "empty":
        return Graph(n)
    raise ValueError(f"unsupported host kind {kind!r}")


def edge_probability(n: int, a: Fraction | None) -> float:
    """``n^-a`` clamped to [0, 1]; ``a is None`` is the infinite exponent (p = 0)."""
    if a is None:
        return 0.0
    if a < 0:
        raise ValueError("p-exponent must be nonnegative")
    if n <= 1:
        return 1.0
    return min(1.0, max(0.0, math.pow(n, -float(a))))


def union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n, tuple(x | y for x, y in zip(g.adj, h.adj)))


@dataclass(frozen=True)
class PerturbedInstance:
    host: Graph
    random_part: Graph
    union: Graph
    a: Fraction | None
    p: float
    seed: Seed

    @property
    def n(self) -> int:
        return self.host.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "host_edges": [list(e) for e in self.host.edges()],
            "random_edges": [list(e) for e in self.random_part.edges()],
            "a": "inf" if self.a is None else fmt_fraction(self.a),
            "p": self.p,
            "seed": {"master": self.seed.master, "stream": self.seed.stream},
            "generator": GENERATOR_VERSION,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PerturbedInstance":
        n = int(data["n"])
        host = Graph.from_edges(n, (tuple(e) for e in data["host_edges"]))
        rand = Graph.from_edges(n, (tuple(e) for e in data["random_edges"]))
        a = None if str(data["a"]) == "inf" else Fraction(str(data["a"]))
        seed = data.get("seed", {})
        p = float(data["p"]) if "p" in data else edge_probability(n, a)
        return cls(host, rand, union(host, rand), a, p,
                   Seed(int(seed.get("master", 0)), int(seed.get("stream", 0))))


def sample_perturbed(host: Graph, a: Fraction | None, seed: Seed) -> PerturbedInstance:
    if host.n == 0:
        raise ValueError("host must have at least one vertex")
    a = None if a is None else Fraction(a)
    p = edge_probability(host.n, a)
    rand = sample_gnp(host.n, p, seed)
    return PerturbedInstance(host, rand, union(host, rand), a, p, seed)
