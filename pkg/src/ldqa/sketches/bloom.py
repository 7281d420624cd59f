"""Bloom filter over a packed uint64 bit array.

Membership indices come from double hashing two 64-bit halves of a
blake2b digest; no false negatives, and the false-positive rate follows
the standard ``(1 - exp(-h*n/m))**h`` analysis.
"""

from __future__ import annotations

import hashlib
import math
from typing import Iterable, Union

import numpy as np

from ldqa.sketches import _kernels

Key = Union[bytes, str]

DEFAULT_BITS = 1 << 20
DEFAULT_HASHES = 7


def _hash_pair(key: Key) -> tuple[int, int]:
    if isinstance(key, str):
        key = key.encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=16).digest()
    h1 = int.from_bytes(digest[:8], "little")
    h2 = int.from_bytes(digest[8:], "little") | 1  # odd stride
    return h1, h2


class BloomFilter:
    def __init__(self, bits: int = DEFAULT_BITS, hashes: int = DEFAULT_HASHES):
        if bits < 64 or hashes < 1:
            raise ValueError("need at least 64 bits and one hash function")
        self.bits = bits
        self.hashes = hashes
        self.inserted = 0
        self._words = np.zeros((bits + 63) // 64, dtype=np.uint64)

    @classmethod
    def for_capacity(cls, expected_items: int, fp_rate: float) -> "BloomFilter":
        """Size for a target false-positive rate at the expected load."""
        if not 0 < fp_rate < 1 or expected_items < 1:
            raise ValueError("expected_items >= 1 and 0 < fp_rate < 1 required")
        bits = math.ceil(-expected_items * math.log(fp_rate) / math.log(2) ** 2)
        hashes = max(1, round(bits / expected_items * math.log(2)))
        return cls(max(bits, 64), hashes)

    def insert(self, key: Key) -> None:
        h1, h2 = _hash_pair(key)
        _kernels.bloom_set(self._words, h1, h2, self.hashes, self.bits)
        self.inserted += 1

    def __contains__(self, key: Key) -> bool:
        h1, h2 = _hash_pair(key)
        return _kernels.bloom_test(self._words, h1, h2, self.hashes, self.bits)

    def insert_many(self, keys: Iterable[Key]) -> None:
        h1s, h2s = self._hash_arrays(keys)
        if h1s.size:
            _kernels.bloom_set_many(self._words, h1s, h2s, self.hashes, self.bits)
        self.inserted += h1s.size

    def contains_many(self, keys: Iterable[Key]) -> np.ndarray:
        h1s, h2s = self._hash_arrays(keys)
        if not h1s.size:
            return np.zeros(0, dtype=bool)
        return np.asarray(
            _kernels.bloom_test_many(self._words, h1s, h2s, self.hashes, self.bits),
            dtype=bool,
        )

    @staticmethod
    def _hash_arrays(keys: Iterable[Key]) -> tuple[np.ndarray, np.ndarray]:
        pairs = [_hash_pair(k) for k in keys]
        if not pairs:
            return np.zeros(0, dtype=np.uint64), np.zeros(0, dtype=np.uint64)
        arr = np.array(pairs, dtype=np.uint64)
        return arr[:, 0], arr[:, 1]

    def expected_fp_rate(self) -> float:
        """Analytic false-positive rate at the current load."""
        return (1.0 - math.exp(-self.hashes * self.inserted / self.bits)) ** self.hashes
