import numpy as np
import pytest

from oracles import bf_is_isomorphic

from graphbench import (
    Graph,
    FormatError,
    GenerationError,
    KroneckerInitiator,
    ModelConfig,
    bfs_all_pairs,
    community_memberships,
    community_structure,
    derive_seed,
    ensure_connected,
    enumerate_connected_nonisomorphic,
    erdos_renyi,
    format_graph6,
    generate,
    geographical,
    grid_pair_probabilities,
    is_connected,
    kronecker,
    kronecker_pair_probabilities,
    load_graph6_corpus,
    mix64,
    scale_free,
    small_world,
    splitmix64,
)


class TestSeeds:
    def test_splitmix_is_stable(self):
        # Pinned so persisted manifests stay decodable across releases.
        assert splitmix64(0) == 16294208416658607535
        assert splitmix64(1) == 10451216379200822465

    def test_mix_orders_matter(self):
        assert mix64(1, 2, 3) != mix64(1, 3, 2)

    def test_derive_seed_distinguishes_coordinates(self):
        seeds = {
            derive_seed(7, "er", cell, sample)
            for cell in range(10)
            for sample in range(10)
        }
        assert len(seeds) == 100


class TestErdosRenyi:
    def test_p_one_is_complete(self):
        g = erdos_renyi(5, 1.0, 0)
        assert g.m == 10

    def test_p_zero_is_empty(self):
        g = erdos_renyi(5, 0.0, 0)
        assert g.m == 0
        assert not is_connected(g)

    def test_mean_edge_count(self):
        # Binomial(4950, 0.1): the mean over 200 seeds should sit within
        # 3 standard errors of 495.
        counts = [erdos_renyi(100, 0.1, seed).m for seed in range(200)]
        se = np.sqrt(4950 * 0.1 * 0.9 / 200)
        assert abs(np.mean(counts) - 495.0) <= 3 * se

    def test_determinism(self):
        assert erdos_renyi(50, 0.2, 123) == erdos_renyi(50, 0.2, 123)

    def test_bad_probability(self):
        with pytest.raises(ValueError):
            erdos_renyi(5, 1.5, 0)


class TestScaleFree:
    def test_edge_count_formula(self):
        assert scale_free(100, 2, 0).m == 1 + 98 * 2
        assert scale_free(100, 3, 0).m == 3 + 97 * 3
        assert scale_free(100, 5, 1).m == 10 + 95 * 5

    def test_min_degree(self):
        for seed in range(5):
            g = scale_free(60, 3, seed)
            assert g.degrees.min() >= 3

    def test_always_connected(self):
        for seed in range(5):
            assert is_connected(scale_free(40, 2, seed))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            scale_free(10, 1, 0)
        with pytest.raises(ValueError):
            scale_free(10, 10, 0)


class TestSmallWorld:
    def test_no_rewiring_is_circulant(self):
        g = small_world(100, 4, 0.0, 0)
        assert np.all(g.degrees == 4)
        assert g.has_edge(0, 1) and g.has_edge(0, 2) and g.has_edge(0, 98)

    def test_edge_count_conserved(self):
        for n, k, p in [(100, 4, 0.1), (100, 8, 0.5), (51, 6, 1.0), (20, 2, 0.9)]:
            for seed in range(3):
                assert small_world(n, k, p, seed).m == n * k // 2

    def test_rewiring_shrinks_mean_distance(self):
        def mean_distance(g):
            dist = bfs_all_pairs(g).dist
            return dist[np.triu_indices(g.n, 1)].mean()

        lattice = mean_distance(small_world(500, 8, 0.0, 0))
        rewired = [
            mean_distance(ensure_connected(
                ModelConfig(model="sw", n=500, params={"k": 8, "p": 0.1}, seed=s)
            )[0])
            for s in range(30)
        ]
        assert np.mean(rewired) < lattice

    def test_odd_k_rejected(self):
        with pytest.raises(ValueError):
            small_world(10, 3, 0.1, 0)


class TestGeographical:
    def test_grid_probabilities(self):
        probs = grid_pair_probabilities(100, 2.0)
        assert probs[0, 1] == pytest.approx(0.5)
        assert probs[0, 11] == pytest.approx(0.25)
        assert probs[0, 0] == 0.0

    def test_non_square_rejected(self):
        with pytest.raises(ValueError, match="square"):
            geographical(90, 2.0, 0)

    def test_kappa_at_most_one_rejected(self):
        with pytest.raises(ValueError):
            geographical(100, 1.0, 0)

    def test_smaller_kappa_gives_denser_graphs(self):
        dense = [geographical(100, 1.2, s).m for s in range(30)]
        sparse = [geographical(100, 2.0, s).m for s in range(30)]
        assert np.mean(dense) > np.mean(sparse)


class TestCommunityStructure:
    def test_single_full_community_is_complete(self):
        g = community_structure(12, 1.0, 1.0, 1, 0)
        assert g.m == 12 * 11 // 2

    def test_no_memberships_no_edges(self):
        g = community_structure(20, 0.0, 1.0, 5, 0)
        assert g.m == 0

    def test_mean_memberships(self):
        # Binomial(10, 0.1) per vertex: grand mean over 100 seeds of
        # 100 vertices each stays within 3 standard errors of 1.0.
        totals = [
            community_memberships(100, 0.1, 10, seed).sum() for seed in range(100)
        ]
        grand_mean = np.sum(totals) / (100 * 100)
        se = np.sqrt(10 * 0.1 * 0.9 / (100 * 100))
        assert abs(grand_mean - 1.0) <= 3 * se

    def test_memberships_match_generator_stream(self):
        # community_structure draws memberships first from the same seed.
        member = community_memberships(30, 0.3, 4, 77)
        g = community_structure(30, 0.3, 0.0, 4, 77)
        assert g.m == 0
        assert member.shape == (30, 4)


class TestKronecker:
    def test_power_sets_size(self):
        initiator = KroneckerInitiator("ones", (1.0, 1.0, 1.0, 1.0))
        g = kronecker(initiator, 3, 0)
        assert g.n == 8
        assert g.m == 28  # complete graph

    def test_identity_initiator_blocks_cross_pairs(self):
        initiator = KroneckerInitiator("identity", (1.0, 0.0, 0.0, 1.0))
        probs = kronecker_pair_probabilities(initiator, 2)
        assert probs[0, 3] == 0.0
        for seed in range(10):
            assert not kronecker(initiator, 2, seed).has_edge(0, 3)

    def test_pair_probability_is_bit_product(self):
        initiator = KroneckerInitiator("asym", (0.9, 0.5, 0.5, 0.2))
        probs = kronecker_pair_probabilities(initiator, 3)
        # vertex 5 = 101, vertex 6 = 110 -> levels pair bits (1,0),(0,1),(1,1)
        assert probs[5, 6] == pytest.approx(0.5 * 0.5 * 0.2)

    def test_initiator_validation(self):
        with pytest.raises(ValueError):
            KroneckerInitiator("bad", (0.5, 0.5, 1.5, 0.5))


class TestEnsureConnected:
    def test_dense_er_connects_first_try(self):
        for seed in range(5):
            cfg = ModelConfig(model="er", n=100, params={"p": 0.3}, seed=seed)
            g, retries = ensure_connected(cfg)
            assert retries == 0
            assert is_connected(g)

    def test_impossible_config_exhausts_budget(self):
        cfg = ModelConfig(model="er", n=5, params={"p": 0.0}, seed=1)
        with pytest.raises(GenerationError, match="er"):
            ensure_connected(cfg, max_retries=20)

    def test_lattice_connects_first_try(self):
        cfg = ModelConfig(model="sw", n=50, params={"k": 4, "p": 0.0}, seed=3)
        g, retries = ensure_connected(cfg)
        assert retries == 0

    def test_config_determinism(self):
        cfg = ModelConfig(model="er", n=60, params={"p": 0.08}, seed=9)
        assert ensure_connected(cfg) == ensure_connected(cfg)


class TestGeneratedGraphsAreSimple:
    def test_degree_sums(self):
        samples = [
            erdos_renyi(80, 0.3, 4),
            scale_free(80, 3, 4),
            small_world(80, 6, 0.5, 4),
            geographical(81, 1.5, 4),
            community_structure(80, 0.2, 0.6, 8, 4),
            kronecker(KroneckerInitiator("x", (0.9, 0.6, 0.6, 0.3)), 6, 4),
        ]
        for g in samples:
            assert g.degrees.sum() == 2 * g.m  # Graph() already rejects dupes


class TestCensus:
    def test_counts_small(self):
        for n, expected in [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)]:
            assert len(enumerate_connected_nonisomorphic(n)) == expected

    def test_three_vertex_classes(self):
        graphs = enumerate_connected_nonisomorphic(3)
        sizes = sorted(g.m for g in graphs)
        assert sizes == [2, 3]  # P3 and K3

    def test_pairwise_nonisomorphic_n4(self):
        graphs = enumerate_connected_nonisomorphic(4)
        for i, g1 in enumerate(graphs):
            for g2 in graphs[i + 1:]:
                assert not bf_is_isomorphic(g1, g2)

    def test_all_connected(self):
        for n in (4, 5):
            assert all(is_connected(g) for g in enumerate_connected_nonisomorphic(n))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            enumerate_connected_nonisomorphic(8)


class TestCorpusLoader:
    def test_round_trip_corpus6(self, corpus6, tmp_path):
        path = tmp_path / "six.g6"
        path.write_text("".join(format_graph6(g) + "\n" for g in corpus6))
        loaded = load_graph6_corpus(path)
        assert loaded == corpus6
        assert all(is_connected(g) for g in loaded)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.g6"
        path.write_text("")
        assert load_graph6_corpus(path) == []

    def test_disconnected_record_loads(self, tmp_path):
        path = tmp_path / "one.g6"
        path.write_text("A?\n")
        graphs = load_graph6_corpus(path)
        assert len(graphs) == 1
        assert not is_connected(graphs[0])

    def test_header_stripped(self, tmp_path):
        path = tmp_path / "hdr.g6"
        path.write_text(">>graph6<<A_\nBw\n")
        graphs = load_graph6_corpus(path)
        assert [g.n for g in graphs] == [2, 3]

    def test_malformed_record_names_line(self, tmp_path):
        path = tmp_path / "bad.g6"
        path.write_text("A_\nC\n")
        with pytest.raises(FormatError, match="line 2"):
            load_graph6_corpus(path)


class TestEdgeListCorpus:
    def test_directory_and_manifest(self, tmp_path):
        from graphbench import parse_edge_list, write_edge_list_corpus

        configs = [
            ModelConfig(model="er", n=30, params={"p": 0.3}, seed=1),
            ModelConfig(model="sw", n=20, params={"k": 4, "p": 0.2}, seed=2),
        ]
        manifest = write_edge_list_corpus(configs, tmp_path / "corpus")
        assert [e["model"] for e in manifest["samples"]] == ["er", "sw"]
        assert all(e["retries"] >= 0 and "seed" in e for e in manifest["samples"])
        import json

        on_disk = json.loads((tmp_path / "corpus" / "manifest.json").read_text())
        assert on_disk == manifest
        for entry in manifest["samples"]:
            g = parse_edge_list((tmp_path / "corpus" / entry["file"]).read_text())
            assert g.n == entry["n"]
            assert is_connected(g)


class TestModelConfig:
    def test_dispatch(self):
        cfg = ModelConfig(model="sf", n=30, params={"k": 2}, seed=5)
        assert generate(cfg) == scale_free(30, 2, 5)

    def test_kg_size_checked(self):
        with pytest.raises(ValueError, match="2\\*\\*k"):
            ModelConfig(model="kg", n=100, params={"k": 5, "initiator": (1, 1, 1, 1)})

    def test_unknown_model(self):
        with pytest.raises(ValueError, match="unknown model"):
            ModelConfig(model="xx", n=10)
