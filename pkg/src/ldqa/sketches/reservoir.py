"""Uniform reservoir sampling (Algorithm R) and the two-level variant
that spreads a resource sample across pay-level domains.
"""

from __future__ import annotations

import hashlib
import random
from typing import Callable, Generic, Iterable, List, Optional, TypeVar

T = TypeVar("T")


class Reservoir(Generic[T]):
    """Fixed-capacity uniform sample of a stream.

    After ``n`` insertions every inserted element is retained with
    probability ``k/n``. With ``distinct=True`` an item already present in
    the sample is not re-offered, so a stream with duplicates samples
    currently-unseen values (exact de-duplication while under capacity).
    """

    def __init__(self, capacity: int, seed: Optional[int] = None, distinct: bool = False):
        if capacity < 1:
            raise ValueError("reservoir capacity must be >= 1")
        self.capacity = capacity
        self.seen = 0
        self.items: List[T] = []
        self._rng = random.Random(seed)
        self._distinct = distinct
        self._members: Optional[set] = set() if distinct else None

    def add(self, item: T) -> None:
        if self._members is not None and item in self._members:
            return
        self.seen += 1
        if len(self.items) < self.capacity:
            self.items.append(item)
            if self._members is not None:
                self._members.add(item)
            return
        slot = self._rng.randrange(self.seen)
        if slot < self.capacity:
            if self._members is not None:
                self._members.discard(self.items[slot])
                self._members.add(item)
            self.items[slot] = item

    def extend(self, items: Iterable[T]) -> None:
        for item in items:
            self.add(item)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, item: T) -> bool:
        if self._members is not None:
            return item in self._members
        return item in self.items


def _subseed(seed: int, key: str) -> int:
    digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
    return (seed ^ int.from_bytes(digest, "big")) & ((1 << 64) - 1)


class TwoLevelReservoir:
    """Sample of resource IRIs evenly spread over pay-level domains.

    A first-level reservoir samples distinct PLDs; every currently sampled
    PLD owns a second-level reservoir of the resource IRIs hosted there.
    Resources arriving for an unsampled PLD are dropped; evicting a PLD
    drops its sub-reservoir. With capacities at least the population sizes
    the sample is exactly the set of distinct inputs.
    """

    def __init__(
        self,
        pld_capacity: int,
        per_pld_capacity: int,
        pld_of: Callable[[str], str],
        seed: int = 0,
    ):
        self.pld_reservoir: Reservoir[str] = Reservoir(pld_capacity, seed=seed)
        self.per_pld: dict[str, Reservoir[str]] = {}
        self.per_pld_capacity = per_pld_capacity
        self._pld_of = pld_of
        self._seed = seed
        self._known_plds: set[str] = set()

    def add(self, iri: str) -> None:
        pld = self._pld_of(iri)
        if pld not in self._known_plds:
            self._known_plds.add(pld)
            before = set(self.pld_reservoir.items)
            self.pld_reservoir.add(pld)
            after = set(self.pld_reservoir.items)
            for evicted in before - after:
                self.per_pld.pop(evicted, None)
            if pld in after:
                self.per_pld[pld] = Reservoir(
                    self.per_pld_capacity, seed=_subseed(self._seed, pld), distinct=True
                )
        sub = self.per_pld.get(pld)
        if sub is not None:
            sub.add(iri)

    def sample(self) -> List[str]:
        out: List[str] = []
        for pld in self.pld_reservoir.items:
            sub = self.per_pld.get(pld)
            if sub is not None:
                out.extend(sub.items)
        return out
