from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from helpers import as_oracle, graphs
from perturbed_ramsey.densities import (
    DensityError,
    beta,
    clique_threshold_formula,
    clique_vectors,
    kreuter_exponent,
    m1_density,
    m_density,
    m_k_parts,
    m_k_parts_certificate,
    m_star,
    mk_density,
    phi_exponent,
)
from perturbed_ramsey.graph import (
    complete,
    complete_bipartite,
    cycle,
    edgeless,
    induced_subgraph,
    path,
)

K1, K2, K3, K4, K5 = (complete(t) for t in range(1, 6))
C4 = cycle(4)


class TestFrozenValues:
    def test_m(self):
        assert m_density(K3) == 1
        assert m_density(K2) == F(1, 2)
        assert m_density(K5) == 2
        assert m_density(edgeless(3)) == 0

    def test_m1(self):
        assert m1_density(K2) == 1
        assert m1_density(K4) == 2
        assert m1_density(C4) == F(4, 3)
        assert m1_density(edgeless(2)) == 0

    def test_mk(self):
        assert mk_density(K2, K2) == 1
        assert mk_density(K3, K3) == F(3, 2)
        assert mk_density(K2, K4) == F(7, 4)
        assert mk_density(K2, K3) == F(4, 3)

    def test_beta(self):
        assert beta(K1, K3) == 1
        assert beta(K1, K1) == 0
        # m1(K2) < m1(K4) so the pair is read as m_K(K2, K4) = (1 + 6)/4
        assert beta(K4, K2) == F(7, 4)
        assert beta(K3, K3) == F(3, 2)
        assert beta(K2, K3) == F(4, 3)

    def test_m_k_parts(self):
        assert m_k_parts(C4, 2) == 0
        assert m_k_parts(K3, 2) == F(1, 2)
        assert m_k_parts(K4, 2) == F(1, 2)

    def test_m_k_parts_certificate_attains_value(self):
        val, part = m_k_parts_certificate(K4, 2)
        assert max(m_density(induced_subgraph(K4, p)) for p in part if p) == val

    def test_m_star(self):
        assert m_star(3, K3, 2).value == 1
        cert = m_star(2, K2, 2)
        assert cert.value == F(1, 2)
        # both (1,0) and (0,1) maximise; ties resolve to the lexicographically first maximiser
        assert cert.vector == (0, 1)

    def test_phi(self):
        assert phi_exponent(K2, 1) == 1
        assert phi_exponent(K3, F(2, 3)) == 1
        assert phi_exponent(C4, 0) == 2

    def test_kreuter(self):
        assert kreuter_exponent([K3, K3]).value == F(3, 2)
        assert kreuter_exponent([K1, K2, K3]).value == F(4, 3)
        with pytest.raises(DensityError):
            kreuter_exponent([K4, K3])

    def test_clique_formula_cases(self):
        for t in range(3, 9):
            te = clique_threshold_formula(t, t)
            assert te.case == "i" and te.value == F(t - 1, 2)
        te = clique_threshold_formula(3, 6)
        assert (te.case, te.value) == ("iii", F(3, 2))
        te = clique_threshold_formula(3, 7)
        assert (te.case, te.value) == ("iv", F(7, 4))
        te = clique_threshold_formula(4, 5)
        # (K_1, K_4) read as m(K_4) = 6/4
        assert te.case == "ii" and te.flagged and te.value == F(3, 2)
        assert te.describe() == "n^(-1/(3/2))"
        assert m_star(4, K5, 2).value == F(3, 2)

    def test_domain_errors(self):
        with pytest.raises(DensityError):
            mk_density(K4, K2)
        with pytest.raises(DensityError):
            mk_density(edgeless(2), K3)
        with pytest.raises(DensityError):
            m1_density(K1)
        with pytest.raises(DensityError):
            phi_exponent(edgeless(3), 1)
        with pytest.raises(DensityError):
            m_star(3, K3, 1)


def test_clique_vectors():
    assert clique_vectors(3, 2) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert len(clique_vectors(4, 3)) == 20


class TestOracles:
    @given(graphs(max_vertices=6))
    def test_m_m1(self, g):
        E, V = as_oracle(g)
        assert m_density(g) == oracles.m(E, V)
        if g.n >= 2:
            assert m1_density(g) == oracles.m1(E, V)

    @given(graphs(max_vertices=5), graphs(max_vertices=5))
    def test_beta(self, f, h):
        assert beta(f, h) == oracles.beta(*as_oracle(f), *as_oracle(h))

    @given(graphs(max_vertices=5), st.integers(2, 3))
    def test_m_k_parts(self, h, k):
        assert m_k_parts(h, k) == oracles.m_k_parts(*as_oracle(h), k)

    @settings(max_examples=25)
    @given(st.integers(1, 4), graphs(max_vertices=4), st.integers(2, 3))
    def test_m_star(self, r, h, k):
        assert m_star(r, h, k).value == oracles.m_star(r, *as_oracle(h), k)

    @given(graphs(max_vertices=5), st.fractions(0, 3, max_denominator=6))
    def test_phi(self, h, a):
        if h.num_edges == 0:
            return
        E, V = as_oracle(h)
        expected = min(len(S) - a * oracles.edges_in(E, S) for S in oracles.subsets(V, 2)
                       if oracles.edges_in(E, S))
        assert phi_exponent(h, a) == expected


class TestProperties:
    @given(graphs(max_vertices=5), graphs(max_vertices=5))
    def test_sandwich(self, f, h):
        if f.num_edges == 0 or h.num_edges == 0:
            return
        lo, hi = sorted([(m1_density(f), f), (m1_density(h), h)], key=lambda x: x[0])
        assert lo[0] <= mk_density(lo[1], hi[1]) <= hi[0]

    @given(graphs(max_vertices=5))
    def test_equal_m1_gives_m1(self, h):
        if h.num_edges:
            assert mk_density(h, h) == m1_density(h)

    @given(graphs(max_vertices=5), graphs(max_vertices=5))
    def test_beta_symmetric(self, f, h):
        assert beta(f, h) == beta(h, f)

    @settings(max_examples=30)
    @given(st.integers(1, 4), graphs(max_vertices=5), st.integers(2, 3))
    def test_pruning_does_not_change_m_star(self, r, h, k):
        a, b = m_star(r, h, k, prune=True), m_star(r, h, k, prune=False)
        assert a.value == b.value

    @settings(max_examples=30)
    @given(st.integers(2, 4), graphs(max_vertices=5), st.integers(2, 3))
    def test_m_star_certificate(self, r, h, k):
        cert = m_star(r, h, k)
        assert sum(cert.vector) <= r - 1
        betas = [beta(complete(x + 1), induced_subgraph(h, p)) for x, p in zip(cert.vector, cert.partition) if p]
        assert max(betas) == cert.value
        assert [b for b in cert.per_part_beta if b is not None] == betas

    @given(graphs(max_vertices=5))
    def test_r1_reduces_to_parts(self, h):
        for k in (2, 3):
            assert m_star(1, h, k).value == m_k_parts(h, k)

    @given(graphs(max_vertices=5))
    def test_more_parts_never_increase_m_k(self, h):
        # a k-partition is a (k+1)-partition with an empty part
        assert m_k_parts(h, 3) <= m_k_parts(h, 2)


def test_complete_bipartite_zero_for_r1():
    assert m_k_parts(complete_bipartite(3, 3), 2) == 0
    assert m_star(1, path(5), 2).value == 0
