"""Vertex-Ramsey thresholds of randomly perturbed graphs.

Exact density parameters, an exact vertex-Ramsey decider, seeded perturbed
instances, the zero-statement colouring and one-statement finder on complete
multipartite hosts, general-pattern bounds, and Monte Carlo threshold scans.
"""

__version__ = "0.1.0"

from ._jit import JIT_ENABLED
from .densities import (
    DensityError,
    MStarCertificate,
    ThresholdExponent,
    beta,
    clique_threshold_formula,
    kreuter_exponent,
    m1_density,
    m_density,
    m_k_parts,
    m_star,
    mk_density,
    phi_exponent,
)
from .graph import Graph, GraphError, complete, complete_bipartite, cycle, graph_catalogue, path
from .graphio import from_graph6, parse_graph, to_graph6
from .ramsey import RamseyVerdict, decide_ramsey, verify_colouring
from .perturbation import PerturbedInstance, Seed, make_host, sample_gnp, sample_perturbed

__all__ = [
    "JIT_ENABLED", "DensityError", "MStarCertificate", "ThresholdExponent", "beta",
    "clique_threshold_formula", "kreuter_exponent", "m1_density", "m_density", "m_k_parts",
    "m_star", "mk_density", "phi_exponent", "Graph", "GraphError", "complete",
    "complete_bipartite", "cycle", "graph_catalogue", "path", "from_graph6", "parse_graph",
    "to_graph6", "RamseyVerdict", "decide_ramsey", "verify_colouring", "PerturbedInstance",
    "Seed", "make_host", "sample_gnp", "sample_perturbed",
]
