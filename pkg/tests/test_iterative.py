import math
import random

import numpy as np
import pytest

import oracles
from _synth import er_graph
from centnet import GraphInputError, MetricParams, UnsupportedGraphError, \
    build_graph
from centnet.graph import power_iteration
from centnet.iterative import (
    coreness_family,
    diffusion_centrality,
    eigen_family,
    hits,
    k_shell,
    leader_rank,
    mixed_degree_decomposition,
    salsa,
    subgraph_centrality,
)
from centnet.local import degree_family
from conftest import complete_graph, cycle_graph


def k4_pendant():
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                        (3, 4)])


class TestKShell:
    def test_k4(self, k4):
        assert k_shell(k4).shell_index == [3, 3, 3, 3]

    def test_star(self, s5):
        assert k_shell(s5).shell_index == [1, 1, 1, 1, 1]

    def test_k4_pendant(self):
        assert k_shell(k4_pendant()).shell_index == [3, 3, 3, 3, 1]

    def test_matches_defining_oracle(self, atlas_sample):
        for g in atlas_sample:
            assert k_shell(g).shell_index == oracles.bf_k_shell(g)

    def test_directed_total_degree(self):
        rng = random.Random(3)
        for seed in range(10):
            n = rng.randint(3, 8)
            edges = {(rng.randrange(n), rng.randrange(n))
                     for _ in range(2 * n)}
            edges = [(u, v) for u, v in edges if u != v]
            if not edges:
                continue
            g = build_graph(edges, directed=True, isolated=range(n))
            assert k_shell(g).shell_index == oracles.bf_k_shell(g)

    def test_removal_order_non_decreasing(self, atlas_sample):
        for g in atlas_sample:
            stages = [stage for _, stage in k_shell(g).removal_order]
            assert stages == sorted(stages)
            if g.n:
                assert max(k_shell(g).shell_index) <= max(g.degrees())


class TestMixedDegree:
    def test_lambda0_is_k_shell(self, atlas_sample):
        for g in atlas_sample:
            mdd = mixed_degree_decomposition(g, 0.0).values
            assert list(mdd) == [float(s) for s in k_shell(g).shell_index]

    def test_lambda1_is_degree(self, atlas_sample):
        for g in atlas_sample:
            mdd = mixed_degree_decomposition(g, 1.0).values
            assert mdd == degree_family(g).values

    def test_pendant_removed_first(self):
        g = k4_pendant()
        assert mixed_degree_decomposition(g, 0.7).values[4] == 1.0

    def test_bad_lambda(self, k3):
        with pytest.raises(GraphInputError):
            mixed_degree_decomposition(k3, 1.5)


class TestCoreness:
    def test_k3(self, k3):
        assert coreness_family(k3, "nc").values == (4.0, 4.0, 4.0)

    def test_star_center(self, s5):
        assert coreness_family(s5, "nc").values[0] == 4.0

    def test_nc_plus_uniform_on_regular(self, c4):
        vals = coreness_family(c4, "nc-plus").values
        assert len(set(vals)) == 1


class TestEigenFamily:
    def test_eigenvector_c4_uniform(self, c4):
        vals = eigen_family(c4, "eigenvector").values
        assert vals == pytest.approx(tuple([0.5] * 4), abs=1e-8)

    def test_eigenvector_matches_dense_solver(self, atlas_sample):
        for g in atlas_sample[:30]:
            if g.n < 2:
                continue
            vals = np.array(eigen_family(g, "eigenvector").values)
            evals, evecs = np.linalg.eigh(g.adjacency_matrix())
            oracle = np.abs(evecs[:, -1])
            assert np.allclose(vals, oracle, atol=1e-6)

    def test_katz_p3(self, p3):
        got = eigen_family(p3, "katz", MetricParams(alpha=0.1)).values
        assert got[0] == pytest.approx(1.12245, abs=1e-5)
        assert got[1] == pytest.approx(1.22449, abs=1e-5)

    def test_katz_alpha_cap(self, k3):
        with pytest.raises(GraphInputError):
            eigen_family(k3, "katz", MetricParams(alpha=0.6))  # 1/lambda=0.5

    def test_katz_matches_inverse_oracle(self, p4):
        alpha = 0.2
        got = eigen_family(p4, "katz", MetricParams(alpha=alpha)).values
        a = p4.adjacency_matrix()
        want = np.linalg.solve(np.eye(4) - alpha * a.T, np.ones(4))
        assert got == pytest.approx(tuple(want))

    def test_pagerank_k3_uniform_unnormalized(self, k3):
        got = eigen_family(k3, "pagerank").values
        assert got == pytest.approx(tuple([1.0 / 0.15] * 3), abs=1e-6)

    def test_pagerank_directed_sink(self):
        g = build_graph([(0, 1), (2, 1)], directed=True)
        got = eigen_family(g, "pagerank").values
        # sources keep the free credit, the sink collects both shares
        assert got[0] == pytest.approx(1.0)
        assert got[1] == pytest.approx(1.0 + 0.85 * 2.0)

    def test_contribution_k3_uniform(self, k3):
        vals = eigen_family(k3, "contribution").values
        assert max(vals) - min(vals) < 1e-9

    def test_cumulative_nomination_k3(self, k3):
        vals = eigen_family(k3, "cumulative-nomination").values
        assert vals == pytest.approx(tuple([1 / 3] * 3), abs=1e-9)

    def test_dynamical_influence_sums_to_one(self, p4):
        assert sum(eigen_family(p4, "dynamical-influence").values) == \
            pytest.approx(1.0)

    def test_directed_in_vs_out_flag(self):
        g = build_graph([(0, 2), (1, 2), (2, 3)], directed=True)
        katz_in = eigen_family(g, "katz", MetricParams(alpha=0.1)).values
        katz_out = eigen_family(g, "katz", MetricParams(alpha=0.1),
                                aggregate="out").values
        # prestige reading rewards the sink, the flipped flag the sources
        assert katz_in[3] > katz_in[0]
        assert katz_out[0] > katz_out[3]

    def test_strictly_positive_on_connected(self, atlas_sample):
        for g in atlas_sample[:25]:
            if g.n < 2:
                continue
            for metric in ("eigenvector", "katz", "pagerank"):
                assert all(x > 0 for x in eigen_family(g, metric).values)

    def test_deterministic_bit_identical(self, p5):
        a = eigen_family(p5, "eigenvector").values
        b = eigen_family(p5, "eigenvector").values
        assert a == b

    def test_rank_invariant_to_init_scaling(self, p5):
        a = p5.adjacency_matrix() + np.eye(5)
        _, v1 = power_iteration(lambda x: a @ x, np.ones(5))
        _, v2 = power_iteration(lambda x: a @ x, 37.0 * np.ones(5))
        assert list(np.argsort(v1)) == list(np.argsort(v2))


class TestHits:
    def test_out_star(self):
        g = build_graph([("a", "b"), ("a", "c")], directed=True)
        auth, hub = hits(g)
        assert hub.values[0] == pytest.approx(1.0, abs=1e-8)
        assert auth.values[0] == pytest.approx(0.0, abs=1e-8)
        assert auth.values[1] == pytest.approx(1 / math.sqrt(2), abs=1e-8)
        assert auth.values[2] == pytest.approx(1 / math.sqrt(2), abs=1e-8)

    def test_two_cycle_uniform(self):
        g = build_graph([(0, 1), (1, 0)], directed=True)
        auth, hub = hits(g)
        assert auth.values == pytest.approx(hub.values)
        assert auth.values[0] == pytest.approx(auth.values[1])

    def test_sink_has_zero_hub(self):
        g = build_graph([(0, 1)], directed=True)
        _, hub = hits(g)
        assert hub.values[1] == pytest.approx(0.0, abs=1e-9)

    def test_undirected_rejected(self, k3):
        with pytest.raises(UnsupportedGraphError):
            hits(k3)

    def test_edgeless_uniform_fallback(self):
        g = build_graph([], directed=True, isolated=[0, 1])
        with pytest.warns(UserWarning):
            auth, hub = hits(g)
        assert auth.values[0] == auth.values[1]


class TestSalsa:
    def test_two_cycle_uniform(self):
        g = build_graph([(0, 1), (1, 0)], directed=True)
        auth, hub = salsa(g)
        assert auth.values == pytest.approx((0.5, 0.5))
        assert hub.values == pytest.approx((0.5, 0.5))

    def test_out_star_authorities(self):
        g = build_graph([("a", "b"), ("a", "c")], directed=True)
        auth, hub = salsa(g)
        assert auth.values[1] == pytest.approx(0.5)
        assert auth.values[2] == pytest.approx(0.5)
        assert hub.values[0] == pytest.approx(1.0)

    def test_no_out_edges_zero_hub(self):
        g = build_graph([(0, 1), (2, 1)], directed=True)
        _, hub = salsa(g)
        assert hub.values[1] == 0.0

    def test_sides_sum_to_one(self):
        rng = random.Random(4)
        for seed in range(8):
            n = rng.randint(3, 9)
            edges = {(rng.randrange(n), rng.randrange(n))
                     for _ in range(3 * n)}
            edges = [(u, v) for u, v in edges if u != v]
            if not edges:
                continue
            g = build_graph(edges, directed=True, isolated=range(n))
            auth, hub = salsa(g)
            assert sum(auth.values) == pytest.approx(1.0, abs=1e-9)
            assert sum(hub.values) == pytest.approx(1.0, abs=1e-9)

    def test_undirected_rejected(self, k3):
        with pytest.raises(UnsupportedGraphError):
            salsa(k3)


class TestLeaderRank:
    def test_two_cycle(self):
        g = build_graph([(0, 1), (1, 0)], directed=True)
        vals = leader_rank(g).values
        assert vals[0] == pytest.approx(vals[1])
        assert sum(v - vals[0] for v in vals) == pytest.approx(0.0)

    def test_directed_cycle_uniform(self):
        g = build_graph([(0, 1), (1, 2), (2, 0)], directed=True)
        vals = leader_rank(g).values
        assert max(vals) - min(vals) < 1e-8

    def test_total_score_conserved(self):
        rng = random.Random(8)
        for seed in range(6):
            n = rng.randint(3, 8)
            edges = {(rng.randrange(n), rng.randrange(n))
                     for _ in range(2 * n)}
            edges = [(u, v) for u, v in edges if u != v]
            if not edges:
                continue
            g = build_graph(edges, directed=True, isolated=range(n))
            vals = leader_rank(g).values
            # final scores redistribute the ground share: total stays n
            assert sum(vals) == pytest.approx(float(g.n), abs=1e-7)

    def test_undirected_rejected(self, k3):
        with pytest.raises(UnsupportedGraphError):
            leader_rank(k3)


class TestDiffusion:
    def test_t1_q1_is_degree(self, atlas_sample):
        for g in atlas_sample[:30]:
            got = diffusion_centrality(g, q=1.0, T=1).values
            assert got == degree_family(g).values

    def test_empty_graph_zeros(self):
        g = build_graph([], isolated=range(4))
        assert diffusion_centrality(g).values == (0.0,) * 4

    def test_matches_dense_power_sum(self, p5):
        a = p5.adjacency_matrix()
        q, T = 0.3, 4
        want = np.zeros(5)
        x = np.ones(5)
        for _ in range(T):
            x = q * (a @ x)
            want += x
        assert diffusion_centrality(p5, q, T).values == \
            pytest.approx(tuple(want))

    def test_bad_params(self, p3):
        with pytest.raises(GraphInputError):
            diffusion_centrality(p3, q=0.0)
        with pytest.raises(GraphInputError):
            diffusion_centrality(p3, q=0.5, T=0)


class TestSubgraph:
    def test_single_edge_cosh(self):
        g = build_graph([(0, 1)])
        assert subgraph_centrality(g).values == \
            pytest.approx((math.cosh(1.0),) * 2)

    def test_isolated_node(self):
        g = build_graph([(0, 1)], isolated=[0, 1, 2])
        assert subgraph_centrality(g).values[2] == pytest.approx(1.0)

    def test_mean_equals_spectral_identity(self, atlas_sample):
        for g in atlas_sample[:40]:
            vals = subgraph_centrality(g).values
            lam = np.linalg.eigvalsh(g.adjacency_matrix())
            assert sum(vals) / g.n == \
                pytest.approx(float(np.sum(np.exp(lam))) / g.n, abs=1e-8)

    def test_directed_rejected(self):
        g = build_graph([(0, 1)], directed=True)
        with pytest.raises(UnsupportedGraphError):
            subgraph_centrality(g)


def test_cross_module_kshell_hindex_limit():
    gs = [complete_graph(5), cycle_graph(6), k4_pendant(),
          er_graph(12, 0.3, 2)]
    from centnet.local import h_index
    for g in gs:
        assert [float(s) for s in k_shell(g).shell_index] == \
            list(h_index(g, order=g.n).values)
