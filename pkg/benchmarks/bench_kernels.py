"""Compare the jitted kernels with the numpy/pure-Python fallback.

Run with numba active (default) to see both columns diverge:

    python benchmarks/bench_kernels.py

Set LDQA_NO_NUMBA=1 to confirm the fallback is what ships when numba is
absent (both columns then measure the same code).
"""

import random
import time

import numpy as np

from ldqa.sketches import _kernels
from ldqa.sketches.bloom import BloomFilter
from ldqa.sketches.graphwalk import StreamedGraph


def timed(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_bloom(n_keys=200_000):
    bloom = BloomFilter.for_capacity(n_keys, 0.01)
    h1s, h2s = BloomFilter._hash_arrays([f"key-{i}" for i in range(n_keys)])

    words_a = np.zeros_like(bloom._words)
    words_b = np.zeros_like(bloom._words)
    active = timed(lambda: _kernels.bloom_set_many(words_a, h1s, h2s, bloom.hashes, bloom.bits))
    fallback = timed(
        lambda: _kernels.fallback["bloom_set_many"](words_b, h1s, h2s, bloom.hashes, bloom.bits)
    )
    assert bool((words_a == words_b).all())

    q_active = timed(lambda: _kernels.bloom_test_many(words_a, h1s, h2s, bloom.hashes, bloom.bits))
    q_fallback = timed(
        lambda: _kernels.fallback["bloom_test_many"](words_b, h1s, h2s, bloom.hashes, bloom.bits)
    )
    return [
        (f"bloom insert x{n_keys}", active, fallback),
        (f"bloom query  x{n_keys}", q_active, q_fallback),
    ]


def bench_walk(n=3000, degree=12):
    rng = random.Random(0)
    graph = StreamedGraph()
    for node in range(n):
        for _ in range(degree):
            graph.add_edge(node, rng.randrange(n))
    indptr, indices = graph.to_csr()
    state = _kernels.rng_state(1)
    budget = 10 * n

    active = timed(lambda: _kernels.walk_visit(indptr, indices, 0, budget, state))
    fallback = timed(lambda: _kernels.fallback["walk_visit"](indptr, indices, 0, budget, state))
    visited = _kernels.walk_visit(indptr, indices, 0, budget, state)

    c_active = timed(lambda: _kernels.mean_local_coefficient(indptr, indices, visited))
    c_fallback = timed(
        lambda: _kernels.fallback["mean_local_coefficient"](indptr, indices, visited)
    )
    return [
        (f"random walk {budget} steps", active, fallback),
        (f"local coefficients |V|={n}", c_active, c_fallback),
    ]


def main():
    print(f"numba active: {_kernels.NUMBA_ENABLED}")
    rows = bench_bloom() + bench_walk()
    print(f"{'kernel':<32} {'accelerated':>12} {'fallback':>12} {'speedup':>8}")
    for name, active, fallback in rows:
        speedup = fallback / active if active > 0 else float("inf")
        print(f"{name:<32} {active * 1e3:>10.2f}ms {fallback * 1e3:>10.2f}ms {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
