"""Text forms of graphs: graph6, ``"n; u-v, ..."`` edge lists, family tokens."""

from __future__ import annotations

import re

from .graph import Graph, GraphError, make_named

_TOKEN = re.compile(r"(?:K(\d+),(\d+)|([KCPME])(\d+))")
_EDGE = re.compile(r"\s*(\d+)\s*-\s*(\d+)\s*")
_HEADER = ">>graph6<<"


def _size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    raise GraphError("graph6 size field supports at most 258047 vertices")


def to_graph6(g: Graph) -> str:
    bits = [(g.adj[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[i:i + 6])) for i in range(0, len(bits), 6)
    )
    return (_size_bytes(g.n) + body).decode("ascii")


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    data = s.encode("ascii", errors="replace")
    if not data or any(not 63 <= c <= 126 for c in data):
        raise GraphError(f"malformed graph6 string {text!r}")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise GraphError("graph6 sizes above 258047 are not supported")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise GraphError(f"graph6 body length does not match {n} vertices")
    bits = [((c - 63) >> (5 - k)) & 1 for c in body for k in range(6)]
    if any(bits[need:]):
        raise GraphError("graph6 padding bits must be zero")
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    return Graph.from_edges(n, (p for p, b in zip(pairs, bits) if b))


def to_edgelist(g: Graph) -> str:
    edges = ", ".join(f"{u}-{v}" for u, v in g.edges())
    return f"{g.n}; {edges}" if edges else f"{g.n};"


def from_edgelist(text: str) -> Graph:
    head, _, tail = text.partition(";")
    try:
        n = int(head.strip())
    except ValueError:
        raise GraphError(f"malformed edge list {text!r}") from None
    edges = []
    for item in tail.split(","):
        if not item.strip():
            continue
        m = _EDGE.fullmatch(item)
        if m is None:
            raise GraphError(f"malformed edge {item.strip()!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    return Graph.from_edges(n, edges)


def from_token(text: str) -> Graph | None:
    m = _TOKEN.fullmatch(text.strip())
    if m is None:
        return None
    if m.group(1) is not None:
        return make_named("K", int(m.group(1)), int(m.group(2)))
    return make_named(m.group(3), int(m.group(4)))


def parse_graph(text: str) -> Graph:
    """Parse a family token, an edge list or a graph6 string."""
    g = from_token(text)
    if g is not None:
        return g
    if ";" in text:
        return from_edgelist(text)
    return from_graph6(text)


def write_graph(g: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return to_edgelist(g)
    raise GraphError(f"unknown graph format {fmt!r}")


def parse_graph_list(text: str) -> list[Graph]:
    """Comma-separated tokens or graph6 strings (``K3,3`` is one token); use
    ``|`` as the separator when items are edge lists."""
    if "|" in text:
        return [parse_graph(part) for part in text.split("|") if part.strip()]
    out = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is not None and (m.end() == len(s) or s[m.end()] == ","):
            item = m.group(0)
            pos = m.end()
        else:
            end = s.find(",", pos)
            end = len(s) if end < 0 else end
            item = s[pos:end]
            pos = end
        out.append(parse_graph(item))
        if pos < len(s) and s[pos] == ",":
            pos += 1
    if not out:
        raise GraphError("empty graph list")
    return out
