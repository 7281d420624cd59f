"""Hot numeric kernels for the Bloom filter and the graph-walk estimator.

Each kernel exists twice: a loop version compiled with numba when it is
installed, and a numpy/pure-Python fallback. ``LDQA_NO_NUMBA=1`` forces the
fallback (the benchmark under ``benchmarks/`` compares both paths). Both
paths share one integer PRNG (splitmix64-seeded xorshift64*), so results
are bit-identical regardless of which path runs.
"""

from __future__ import annotations

import os

import numpy as np

_U64 = np.uint64
_MASK = (1 << 64) - 1


def numba_requested() -> bool:
    return os.environ.get("LDQA_NO_NUMBA", "").strip() in ("", "0")


def _splitmix64(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def rng_state(seed: int) -> int:
    """Initial xorshift64* state for a 64-bit seed (never zero)."""
    state = _splitmix64(seed & _MASK)
    return state if state != 0 else 0x9E3779B97F4A7C15


def _xorshift_py(state: int) -> tuple[int, int]:
    state ^= state >> 12
    state = (state ^ (state << 25)) & _MASK
    state ^= state >> 27
    return state, ((state * 0x2545F4914F6CDD1D) & _MASK) >> 33


# ---------------------------------------------------------------------------
# Pure numpy / Python fallback path.


def _bloom_set_np(words: np.ndarray, h1: int, h2: int, hashes: int, bits: int) -> None:
    idx = (_U64(h1) + np.arange(hashes, dtype=np.uint64) * _U64(h2)) % _U64(bits)
    np.bitwise_or.at(words, (idx >> _U64(6)).astype(np.int64), _U64(1) << (idx & _U64(63)))


def _bloom_test_np(words: np.ndarray, h1: int, h2: int, hashes: int, bits: int) -> bool:
    idx = (_U64(h1) + np.arange(hashes, dtype=np.uint64) * _U64(h2)) % _U64(bits)
    hit = words[(idx >> _U64(6)).astype(np.int64)] & (_U64(1) << (idx & _U64(63)))
    return bool(np.all(hit != 0))


def _bloom_set_many_np(words: np.ndarray, h1s: np.ndarray, h2s: np.ndarray,
                       hashes: int, bits: int) -> None:
    steps = np.arange(hashes, dtype=np.uint64)
    idx = (h1s[:, None] + steps[None, :] * h2s[:, None]) % _U64(bits)
    np.bitwise_or.at(
        words, (idx >> _U64(6)).astype(np.int64).ravel(), (_U64(1) << (idx & _U64(63))).ravel()
    )


def _bloom_test_many_np(words: np.ndarray, h1s: np.ndarray, h2s: np.ndarray,
                        hashes: int, bits: int) -> np.ndarray:
    steps = np.arange(hashes, dtype=np.uint64)
    idx = (h1s[:, None] + steps[None, :] * h2s[:, None]) % _U64(bits)
    hit = words[(idx >> _U64(6)).astype(np.int64)] & (_U64(1) << (idx & _U64(63)))
    return np.all(hit != 0, axis=1)


def _walk_visit_np(indptr: np.ndarray, indices: np.ndarray, start: int,
                   budget: int, state: int) -> np.ndarray:
    visited = np.zeros(indptr.shape[0] - 1, dtype=np.bool_)
    node = start
    visited[node] = True
    for _ in range(budget):
        lo = int(indptr[node])
        deg = int(indptr[node + 1]) - lo
        if deg == 0:
            break
        state, draw = _xorshift_py(state)
        node = int(indices[lo + draw % deg])
        visited[node] = True
    return visited


def _mean_local_coefficient_np(indptr: np.ndarray, indices: np.ndarray,
                               visited: np.ndarray) -> float:
    total = 0.0
    count = 0
    for node in np.flatnonzero(visited):
        lo, hi = int(indptr[node]), int(indptr[node + 1])
        deg = hi - lo
        count += 1
        if deg < 2:
            continue
        neigh = indices[lo:hi]
        links = 0
        for u in neigh:
            links += np.intersect1d(
                indices[indptr[u]:indptr[u + 1]], neigh, assume_unique=True
            ).size
        total += links / (deg * (deg - 1))
    return total / count if count else 0.0


# ---------------------------------------------------------------------------
# Numba path: identical semantics, loop-shaped for nopython compilation.

NUMBA_ENABLED = False

if numba_requested():
    try:
        from numba import njit
    except ImportError:
        njit = None
    if njit is not None:
        NUMBA_ENABLED = True

        @njit(cache=True)
        def _xorshift_nb(state):
            state ^= state >> _U64(12)
            state ^= (state << _U64(25)) & _U64(_MASK)
            state ^= state >> _U64(27)
            return state, (state * _U64(0x2545F4914F6CDD1D)) >> _U64(33)

        @njit(cache=True)
        def _bloom_set_nb(words, h1, h2, hashes, bits):
            for i in range(hashes):
                idx = (h1 + _U64(i) * h2) % bits
                words[idx >> _U64(6)] |= _U64(1) << (idx & _U64(63))

        @njit(cache=True)
        def _bloom_test_nb(words, h1, h2, hashes, bits):
            for i in range(hashes):
                idx = (h1 + _U64(i) * h2) % bits
                if words[idx >> _U64(6)] & (_U64(1) << (idx & _U64(63))) == _U64(0):
                    return False
            return True

        @njit(cache=True)
        def _bloom_set_many_nb(words, h1s, h2s, hashes, bits):
            for j in range(h1s.shape[0]):
                _bloom_set_nb(words, h1s[j], h2s[j], hashes, bits)

        @njit(cache=True)
        def _bloom_test_many_nb(words, h1s, h2s, hashes, bits):
            out = np.empty(h1s.shape[0], dtype=np.bool_)
            for j in range(h1s.shape[0]):
                out[j] = _bloom_test_nb(words, h1s[j], h2s[j], hashes, bits)
            return out

        @njit(cache=True)
        def _walk_visit_nb(indptr, indices, start, budget, state):
            visited = np.zeros(indptr.shape[0] - 1, dtype=np.bool_)
            node = np.int64(start)
            visited[node] = True
            st = _U64(state)
            for _ in range(budget):
                lo = indptr[node]
                deg = indptr[node + 1] - lo
                if deg == 0:
                    break
                st, draw = _xorshift_nb(st)
                node = indices[lo + np.int64(draw % _U64(deg))]
                visited[node] = True
            return visited

        @njit(cache=True)
        def _mean_local_coefficient_nb(indptr, indices, visited):
            total = 0.0
            count = 0
            for node in range(visited.shape[0]):
                if not visited[node]:
                    continue
                lo = indptr[node]
                hi = indptr[node + 1]
                deg = hi - lo
                count += 1
                if deg < 2:
                    continue
                links = 0
                for k in range(lo, hi):
                    u = indices[k]
                    # two-pointer merge: both neighbour lists are sorted
                    a = indptr[u]
                    a_hi = indptr[u + 1]
                    b = lo
                    while a < a_hi and b < hi:
                        if indices[a] < indices[b]:
                            a += 1
                        elif indices[a] > indices[b]:
                            b += 1
                        else:
                            links += 1
                            a += 1
                            b += 1
                total += links / (deg * (deg - 1))
            if count == 0:
                return 0.0
            return total / count


def _bloom_set_dispatch(words, h1, h2, hashes, bits):
    if NUMBA_ENABLED:
        _bloom_set_nb(words, _U64(h1), _U64(h2), hashes, _U64(bits))
    else:
        _bloom_set_np(words, h1, h2, hashes, bits)


def _bloom_test_dispatch(words, h1, h2, hashes, bits):
    if NUMBA_ENABLED:
        return bool(_bloom_test_nb(words, _U64(h1), _U64(h2), hashes, _U64(bits)))
    return _bloom_test_np(words, h1, h2, hashes, bits)


def _bloom_set_many_dispatch(words, h1s, h2s, hashes, bits):
    if NUMBA_ENABLED:
        _bloom_set_many_nb(words, h1s, h2s, hashes, _U64(bits))
    else:
        _bloom_set_many_np(words, h1s, h2s, hashes, bits)


def _bloom_test_many_dispatch(words, h1s, h2s, hashes, bits):
    if NUMBA_ENABLED:
        return _bloom_test_many_nb(words, h1s, h2s, hashes, _U64(bits))
    return _bloom_test_many_np(words, h1s, h2s, hashes, bits)


def _walk_visit_dispatch(indptr, indices, start, budget, state):
    if NUMBA_ENABLED:
        return _walk_visit_nb(indptr, indices, start, budget, _U64(state))
    return _walk_visit_np(indptr, indices, start, budget, state)


def _mean_local_coefficient_dispatch(indptr, indices, visited):
    if NUMBA_ENABLED:
        return float(_mean_local_coefficient_nb(indptr, indices, visited))
    return _mean_local_coefficient_np(indptr, indices, visited)


bloom_set = _bloom_set_dispatch
bloom_test = _bloom_test_dispatch
bloom_set_many = _bloom_set_many_dispatch
bloom_test_many = _bloom_test_many_dispatch
walk_visit = _walk_visit_dispatch
mean_local_coefficient = _mean_local_coefficient_dispatch

fallback = {
    "bloom_set": _bloom_set_np,
    "bloom_test": _bloom_test_np,
    "bloom_set_many": _bloom_set_many_np,
    "bloom_test_many": _bloom_test_many_np,
    "walk_visit": _walk_visit_np,
    "mean_local_coefficient": _mean_local_coefficient_np,
}
