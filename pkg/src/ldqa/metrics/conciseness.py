"""Extensional conciseness: are instances unique in their property-value sets?

Each subject is fingerprinted by the sorted set of its (predicate, object)
pairs; a Bloom filter detects repeated fingerprints, so memory stays flat
in the number of distinct fingerprints rather than their size.
"""

from __future__ import annotations

import hashlib
from typing import Dict, Set

from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.ntriples import format_term
from ldqa.sketches.bloom import DEFAULT_BITS, DEFAULT_HASHES, BloomFilter
from ldqa.terms import RdfTerm, Triple, resource_id


class ExtensionalConciseness(MetricInstance):
    def __init__(self, descriptor=None, bloom_bits: int = DEFAULT_BITS, bloom_hashes: int = DEFAULT_HASHES):
        super().__init__(descriptor)
        self._pairs: Dict[RdfTerm, Set[str]] = {}
        self._bloom = BloomFilter(bloom_bits, bloom_hashes)

    def _accept(self, triple: Triple) -> None:
        pair = f"{format_term(triple.predicate)} {format_term(triple.object)}"
        self._pairs.setdefault(triple.subject, set()).add(pair)

    @staticmethod
    def _fingerprint(pairs: Set[str]) -> bytes:
        digest = hashlib.blake2b(digest_size=16)
        for pair in sorted(pairs):
            digest.update(pair.encode("utf-8"))
            digest.update(b"\n")
        return digest.digest()

    def _finalize(self, run) -> MetricValue:
        if not self._pairs:
            self.mark_degenerate()
            return 0.0
        unique = 0
        for subject, pairs in self._pairs.items():
            fingerprint = self._fingerprint(pairs)
            if fingerprint in self._bloom:
                self.report_resource(
                    resource_id(subject), "instance repeats another instance's property-value set"
                )
            else:
                unique += 1
                self._bloom.insert(fingerprint)
        return unique / len(self._pairs)
