"""Incrementally built resource graph and random-walk clustering estimate.

The graph is the undirected view of IRI-to-IRI statements accumulated
while streaming. The estimator walks the graph and averages the local
clustering coefficient over the distinct nodes the walk visits; nodes of
degree < 2 contribute 0.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Set

import numpy as np

from ldqa.sketches import _kernels


class EmptyGraph(ValueError):
    """The estimator needs at least one node."""


class StreamedGraph:
    def __init__(self) -> None:
        self._ids: Dict[Hashable, int] = {}
        self._adjacency: List[Set[int]] = []
        self.edge_count = 0

    def _id(self, node: Hashable) -> int:
        idx = self._ids.get(node)
        if idx is None:
            idx = len(self._adjacency)
            self._ids[node] = idx
            self._adjacency.append(set())
        return idx

    def add_node(self, node: Hashable) -> None:
        self._id(node)

    def add_edge(self, a: Hashable, b: Hashable) -> None:
        if a == b:
            self._id(a)
            return
        ia, ib = self._id(a), self._id(b)
        if ib not in self._adjacency[ia]:
            self._adjacency[ia].add(ib)
            self._adjacency[ib].add(ia)
            self.edge_count += 1

    @property
    def node_count(self) -> int:
        return len(self._adjacency)

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(len(self._adjacency) + 1, dtype=np.int64)
        for i, neigh in enumerate(self._adjacency):
            indptr[i + 1] = indptr[i] + len(neigh)
        indices = np.empty(int(indptr[-1]), dtype=np.int64)
        for i, neigh in enumerate(self._adjacency):
            indices[indptr[i]:indptr[i + 1]] = sorted(neigh)
        return indptr, indices


def clustering_coefficient_estimate(
    graph: StreamedGraph, walk_budget: int, seed: int = 0
) -> float:
    """Mean local clustering coefficient over the nodes a random walk visits.

    The walk starts at a uniformly chosen node, takes ``walk_budget``
    uniform-neighbour steps (stopping early only at a sink with no
    neighbours) and the estimate averages over the distinct visited nodes.
    """
    n = graph.node_count
    if n == 0:
        raise EmptyGraph("cannot estimate the clustering coefficient of an empty graph")
    indptr, indices = graph.to_csr()
    state = _kernels.rng_state(seed)
    state, draw = _kernels._xorshift_py(state)
    start = draw % n
    visited = _kernels.walk_visit(indptr, indices, start, walk_budget, state)
    return float(_kernels.mean_local_coefficient(indptr, indices, visited))
