from hypothesis import strategies as st

from perturbed_ramsey.graph import Graph


@st.composite
def graphs(draw, min_vertices=1, max_vertices=6):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def as_oracle(g: Graph):
    """(edge list, vertex set) form used by the oracles module."""
    return list(g.edges()), frozenset(range(g.n))
