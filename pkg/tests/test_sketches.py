"""Statistical and structural tests for the probabilistic sketches."""

import math
import random

import numpy as np
import pytest

from helpers import exact_mean_local_coefficient, random_connected_graph
from ldqa.pld import pay_level_domain
from ldqa.sketches import _kernels
from ldqa.sketches.bloom import BloomFilter
from ldqa.sketches.graphwalk import EmptyGraph, StreamedGraph, clustering_coefficient_estimate
from ldqa.sketches.reservoir import Reservoir, TwoLevelReservoir


# -- reservoir ---------------------------------------------------------------


def test_reservoir_under_capacity_keeps_everything():
    r = Reservoir(5, seed=1)
    for item in "abcde":
        r.add(item)
    assert sorted(r.items) == list("abcde")
    assert r.seen == 5


def test_reservoir_two_items_capacity_one_is_fair():
    # DERIVED oracle: P(keep second) = 1/2; 10,000 runs within 3 sigma
    runs = 10_000
    kept_b = 0
    for seed in range(runs):
        r = Reservoir(1, seed=seed)
        r.add("a")
        r.add("b")
        if r.items == ["b"]:
            kept_b += 1
    sigma = math.sqrt(0.25 / runs)
    assert abs(kept_b / runs - 0.5) <= 3 * sigma


def test_reservoir_inclusion_probability_is_k_over_n():
    # smaller sibling of the acceptance criterion: k=20, n=400, 400 runs
    k, n, runs = 20, 400, 400
    counts = np.zeros(n)
    for seed in range(runs):
        r = Reservoir(k, seed=seed)
        for item in range(n):
            r.add(item)
        counts[np.array(r.items)] += 1
    expected = runs * k / n
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    from scipy.stats import chi2 as chi2_dist

    assert chi2 < chi2_dist.ppf(1 - 0.001, n - 1)


def test_reservoir_distinct_mode_dedupes():
    r = Reservoir(10, seed=0, distinct=True)
    for _ in range(5):
        r.add("same")
    assert r.items == ["same"]
    assert r.seen == 1


def test_two_level_reservoir_full_capacity_equals_population():
    iris = [f"http://host{h}.example/r{i}" for h in range(5) for i in range(20)]
    sampler = TwoLevelReservoir(10, 50, pay_level_domain, seed=3)
    for iri in iris * 2:  # duplicates must not inflate the sample
        sampler.add(iri)
    assert sorted(sampler.sample()) == sorted(set(iris))


def test_two_level_reservoir_only_sampled_plds_hold_subreservoirs():
    sampler = TwoLevelReservoir(2, 10, pay_level_domain, seed=7)
    for h in range(10):
        for i in range(5):
            sampler.add(f"http://host{h}.example/r{i}")
    assert set(sampler.per_pld) == set(sampler.pld_reservoir.items)
    assert len(sampler.per_pld) == 2


# -- bloom filter --------------------------------------------------------------


def test_bloom_no_false_negatives_and_empty_negative():
    bloom = BloomFilter.for_capacity(1000, 0.01)
    assert "anything" not in bloom
    keys = [f"key-{i}" for i in range(1000)]
    for key in keys:
        bloom.insert(key)
    assert all(key in bloom for key in keys)
    assert bool(bloom.contains_many(keys).all())


def test_bloom_fpr_close_to_design_point():
    bloom = BloomFilter.for_capacity(2000, 0.01)
    bloom.insert_many([f"in-{i}" for i in range(2000)])
    probes = [f"out-{i}" for i in range(20_000)]
    fpr = float(bloom.contains_many(probes).mean())
    assert fpr < 0.02


def test_bloom_batch_and_single_paths_agree():
    a = BloomFilter(1 << 12, 5)
    b = BloomFilter(1 << 12, 5)
    keys = [f"k{i}" for i in range(64)]
    for key in keys:
        a.insert(key)
    b.insert_many(keys)
    assert bool((a._words == b._words).all())
    probes = keys + [f"x{i}" for i in range(64)]
    singles = np.array([p in a for p in probes])
    batch = b.contains_many(probes)
    assert bool((singles == batch).all())


def test_bloom_sizing_formula():
    bloom = BloomFilter.for_capacity(10_000, 0.01)
    assert bloom.hashes == round(bloom.bits / 10_000 * math.log(2))
    assert bloom.bits >= -10_000 * math.log(0.01) / math.log(2) ** 2


# -- kernels: numba and fallback parity ---------------------------------------


def test_kernel_paths_produce_identical_results():
    rng = random.Random(5)
    graph = StreamedGraph()
    for _ in range(300):
        graph.add_edge(rng.randrange(40), rng.randrange(40))
    indptr, indices = graph.to_csr()
    state = _kernels.rng_state(99)
    active = _kernels.walk_visit(indptr, indices, 3, 500, state)
    fallback = _kernels.fallback["walk_visit"](indptr, indices, 3, 500, state)
    assert bool((active == fallback).all())
    c_active = _kernels.mean_local_coefficient(indptr, indices, active)
    c_fallback = _kernels.fallback["mean_local_coefficient"](indptr, indices, fallback)
    assert c_active == pytest.approx(c_fallback, abs=1e-12)

    words_a = np.zeros(64, dtype=np.uint64)
    words_b = np.zeros(64, dtype=np.uint64)
    for i in range(50):
        h1, h2 = random.Random(i).getrandbits(64), random.Random(i + 1).getrandbits(64) | 1
        _kernels.bloom_set(words_a, h1, h2, 7, 64 * 64)
        _kernels.fallback["bloom_set"](words_b, h1, h2, 7, 64 * 64)
    assert bool((words_a == words_b).all())


# -- graph walk estimator -----------------------------------------------------


def _graph_from_adjacency(adjacency):
    graph = StreamedGraph()
    for node, neighbours in adjacency.items():
        graph.add_node(node)
        for neighbour in neighbours:
            graph.add_edge(node, neighbour)
    return graph


def test_triangle_is_exactly_one_for_any_seed():
    graph = StreamedGraph()
    graph.add_edge("a", "b")
    graph.add_edge("b", "c")
    graph.add_edge("c", "a")
    for seed in range(10):
        assert clustering_coefficient_estimate(graph, 30, seed) == 1.0


def test_star_and_trees_are_exactly_zero():
    star = StreamedGraph()
    for leaf in range(5):
        star.add_edge("hub", f"leaf{leaf}")
    for seed in range(10):
        assert clustering_coefficient_estimate(star, 50, seed) == 0.0
    rng = random.Random(0)
    tree = StreamedGraph()
    for node in range(1, 40):  # random recursive tree
        tree.add_edge(node, rng.randrange(node))
    for seed in range(10):
        assert clustering_coefficient_estimate(tree, 400, seed) == 0.0


def test_complete_graph_is_exactly_one_regardless_of_seed():
    graph = StreamedGraph()
    for a in range(12):
        for b in range(a + 1, 12):
            graph.add_edge(a, b)
    for seed in range(10):
        assert clustering_coefficient_estimate(graph, 120, seed) == 1.0


def test_empty_graph_raises():
    with pytest.raises(EmptyGraph):
        clustering_coefficient_estimate(StreamedGraph(), 10, 0)


def test_estimate_tracks_exact_oracle_on_random_graphs():
    rng = random.Random(1234)
    errors = []
    for _ in range(8):
        n = rng.randint(20, 120)
        adjacency = random_connected_graph(n, rng.uniform(0.1, 0.35), rng)
        exact = exact_mean_local_coefficient(adjacency)
        graph = _graph_from_adjacency(adjacency)
        estimates = [
            clustering_coefficient_estimate(graph, 10 * n, seed) for seed in range(10)
        ]
        errors.append(abs(sum(estimates) / len(estimates) - exact))
    assert max(errors) <= 0.1


def test_self_loops_are_ignored():
    graph = StreamedGraph()
    graph.add_edge("a", "a")
    graph.add_edge("a", "b")
    assert graph.edge_count == 1
    assert graph.node_count == 2
