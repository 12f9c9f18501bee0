import numpy as np
import pytest

from oracles import (
    bf_betweenness,
    bf_subgraph_series,
    bf_walk_betweenness,
    random_tree,
)

from graphbench import (
    Graph,
    DisconnectedGraphError,
    all_measures,
    betweenness,
    centrality_csv,
    closeness,
    degree,
    eccentricity,
    eigenvector,
    erdos_renyi,
    information,
    power_iteration,
    subgraph,
    sym_eigen,
    walk_betweenness,
)
from graphbench.centrality import MEASURES

P3 = Graph(3, [(0, 1), (1, 2)])
P4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
K3 = Graph(3, [(0, 1), (0, 2), (1, 2)])
STAR4 = Graph(4, [(0, 1), (0, 2), (0, 3)])
STAR5 = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


def _complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _random_connected(n, p, seed):
    for offset in range(50):
        g = erdos_renyi(n, p, seed + offset)
        from graphbench import is_connected

        if is_connected(g):
            return g
    raise AssertionError("could not draw a connected test graph")


class TestDegree:
    def test_examples(self):
        assert np.array_equal(degree(K3).values, [2, 2, 2])
        assert np.array_equal(degree(P3).values, [1, 2, 1])
        assert np.array_equal(degree(STAR5).values, [4, 1, 1, 1, 1])


class TestCloseness:
    def test_examples(self):
        assert np.allclose(closeness(K3).values, [0.5, 0.5, 0.5])
        assert np.allclose(closeness(P3).values, [1 / 3, 1 / 2, 1 / 3])
        assert np.allclose(closeness(P4).values, [1 / 6, 1 / 4, 1 / 4, 1 / 6])

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            closeness(Graph(3, [(0, 1)]))


class TestEccentricity:
    def test_examples(self):
        assert np.allclose(eccentricity(K3).values, [1, 1, 1])
        assert np.allclose(eccentricity(P3).values, [0.5, 1.0, 0.5])
        assert np.allclose(eccentricity(_cycle(5)).values, 0.5)

    def test_single_vertex_rejected(self):
        with pytest.raises(ValueError):
            eccentricity(Graph(1))

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            eccentricity(Graph(3, [(0, 1)]))


class TestBetweenness:
    def test_examples(self):
        assert np.allclose(betweenness(_complete(5)).values, 0.0)
        assert np.allclose(betweenness(P3).values, [0, 1, 0])
        assert np.allclose(betweenness(STAR4).values, [3, 0, 0, 0])

    def test_matches_geodesic_enumeration(self, corpus_small):
        for g in corpus_small:
            assert np.max(np.abs(betweenness(g).values - bf_betweenness(g))) <= 1e-9

    def test_matches_oracle_on_random_graphs(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            g = _random_connected(int(rng.integers(5, 20)), 0.35, int(rng.integers(1e6)))
            assert np.max(np.abs(betweenness(g).values - bf_betweenness(g))) <= 1e-9


class TestEigenvector:
    def test_uniform_on_complete(self):
        assert np.allclose(eigenvector(_complete(6)).values, 1 / 6)

    def test_star_center_dominates(self):
        values = eigenvector(STAR4).values
        assert values[0] > values[1]
        assert np.allclose(values[1:], values[1])

    def test_matches_dense_eigensolver(self):
        for g in (P3, P4, K3, STAR5, _cycle(7)):
            values = eigenvector(g).values
            _, vecs = sym_eigen(g.adjacency_matrix + np.eye(g.n))
            dominant = np.abs(vecs[:, -1])
            dominant /= dominant.sum()
            assert np.max(np.abs(values - dominant)) <= 1e-8

    def test_sums_to_one(self):
        g = _random_connected(30, 0.2, 5)
        state = power_iteration(g)
        assert state.last_delta < 1e-12
        assert abs(state.iterate.sum() - 1.0) < 1e-12


class TestInformation:
    def test_vertex_transitive_constant(self):
        for g in (K3, _cycle(4)):
            values = information(g).values
            assert np.allclose(values, values[0])

    def test_path_hand_inversion(self):
        assert np.max(np.abs(information(P3).values - [1.0, 1.5, 1.0])) <= 1e-9

    def test_row_sums_constant(self, corpus_small):
        from graphbench import information_intermediate

        for g in corpus_small:
            if g.n < 2:
                continue
            inter = information_intermediate(g)
            sums = inter.b.sum(axis=1)
            assert np.max(np.abs(sums - sums[0])) <= 1e-8
            # (D - A + U) @ (1/n) = all-ones, so every row of B sums to 1/n.
            assert sums[0] == pytest.approx(1.0 / g.n, abs=1e-10)
            assert inter.t == pytest.approx(np.trace(inter.b))


class TestSubgraph:
    def test_single_vertex(self):
        assert np.allclose(subgraph(Graph(1)).values, [1.0])

    def test_edge_is_cosh_one(self):
        values = subgraph(Graph(2, [(0, 1)])).values
        assert np.max(np.abs(values - np.cosh(1.0))) <= 1e-12

    def test_path_ordering_and_series_oracle(self):
        values = subgraph(P3).values
        series = bf_subgraph_series(P3)
        assert values[1] > values[0]
        assert values[0] == pytest.approx(values[2], abs=1e-12)
        assert np.max(np.abs(values - series)) <= 1e-8

    def test_series_oracle_on_corpus(self, corpus_small):
        for g in corpus_small:
            assert np.max(np.abs(subgraph(g).values - bf_subgraph_series(g))) <= 1e-8

    def test_at_least_one_and_trace_identity(self, corpus_small):
        for g in corpus_small:
            values = subgraph(g).values
            lam, _ = sym_eigen(g.adjacency_matrix)
            assert np.all(values >= 1.0 - 1e-12)
            assert values.sum() == pytest.approx(np.exp(lam).sum(), abs=1e-8)


class TestWalkBetweenness:
    def test_path(self):
        assert np.max(np.abs(walk_betweenness(P3).values - [2, 3, 2])) <= 1e-9

    def test_triangle(self):
        assert np.max(np.abs(walk_betweenness(K3).values - (2 + 1 / 3))) <= 1e-9

    def test_matches_per_pair_current_solve(self, corpus_small):
        for g in corpus_small:
            if g.n < 2:
                continue
            mine = walk_betweenness(g).values
            assert np.max(np.abs(mine - bf_walk_betweenness(g))) <= 1e-8

    def test_tree_identity(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            tree = random_tree(int(rng.integers(2, 40)), rng)
            offset = walk_betweenness(tree).values - betweenness(tree).values
            assert np.max(np.abs(offset - (tree.n - 1))) <= 1e-6

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            walk_betweenness(Graph(3, [(0, 1)]))


class TestInvariants:
    def test_permutation_equivariance(self):
        rng = np.random.default_rng(99)
        for _ in range(6):
            g = _random_connected(int(rng.integers(5, 14)), 0.4, int(rng.integers(1e6)))
            perm = rng.permutation(g.n)
            h = g.relabel(perm)
            for name in MEASURES:
                original = all_measures(g, [name])[name].values
                permuted = all_measures(h, [name])[name].values
                assert np.max(np.abs(permuted[perm] - original)) <= 1e-9, name

    def test_vertex_transitive_graphs_constant(self):
        for g in (_cycle(5), _cycle(8), _complete(4), _complete(7)):
            for name, vec in all_measures(g).items():
                assert np.allclose(vec.values, vec.values[0], atol=1e-9), name

    def test_measures_reject_disconnected(self):
        g = Graph(4, [(0, 1), (2, 3)])
        for func in (closeness, eccentricity, betweenness, information, walk_betweenness):
            with pytest.raises(DisconnectedGraphError):
                func(g)


class TestCsv:
    def test_header_and_precision(self):
        text = centrality_csv(all_measures(P3))
        lines = text.strip().split("\n")
        assert lines[0] == (
            "vertex,betweenness,closeness,degree,eccentricity,"
            "eigenvector,information,subgraph,walk_betweenness"
        )
        assert len(lines) == 4
        first = lines[1].split(",")
        assert first[0] == "0"
        assert first[1] == "0.000000"
        assert first[3] == "1.000000"
        assert all(len(cell.split(".")[1]) == 6 for cell in first[1:])
