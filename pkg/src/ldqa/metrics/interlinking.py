"""Interlinking metrics: external-provider links and graph cohesion."""

from __future__ import annotations

from typing import Optional, Set

from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.pld import pay_level_domain
from ldqa.sketches.graphwalk import EmptyGraph, StreamedGraph, clustering_coefficient_estimate
from ldqa.sketches.reservoir import Reservoir
from ldqa.terms import Iri, Triple


class LinksToExternalProviders(MetricInstance):
    """Share of (sampled) object IRIs hosted on a different pay-level
    domain than the dataset itself."""

    def __init__(
        self,
        descriptor=None,
        base_iri: str = "",
        sampling: bool = False,
        capacity: int = 1000,
        seed: int = 0,
    ):
        super().__init__(descriptor)
        self._base_pld = pay_level_domain(base_iri) if base_iri else ""
        self._sample: Optional[Reservoir[str]] = (
            Reservoir(capacity, seed=seed, distinct=True) if sampling else None
        )
        self._objects: Set[str] = set()

    def _accept(self, triple: Triple) -> None:
        if not isinstance(triple.object, Iri):
            return
        if self._sample is not None:
            self._sample.add(triple.object.text)
        else:
            self._objects.add(triple.object.text)

    def _finalize(self, run) -> MetricValue:
        objects = sorted(self._sample.items) if self._sample is not None else sorted(self._objects)
        if not objects:
            self.mark_degenerate()
            return 0.0
        external = 0
        for iri in objects:
            if self._base_pld and pay_level_domain(iri) != self._base_pld:
                external += 1
            else:
                self.report_resource(iri, "object resource is not an external provider link")
        return external / len(objects)


class InterlinkClustering(MetricInstance):
    """Clustering-coefficient estimate of the IRI-to-IRI resource graph,
    built on the fly and measured by a random walk at finalize."""

    def __init__(self, descriptor=None, walk_budget_per_node: int = 10, seed: int = 0):
        super().__init__(descriptor)
        self._graph = StreamedGraph()
        self._budget_per_node = walk_budget_per_node
        self._seed = seed

    def _accept(self, triple: Triple) -> None:
        if isinstance(triple.subject, Iri) and isinstance(triple.object, Iri):
            self._graph.add_edge(triple.subject.text, triple.object.text)

    def _finalize(self, run) -> MetricValue:
        try:
            return clustering_coefficient_estimate(
                self._graph, self._budget_per_node * max(self._graph.node_count, 1), self._seed
            )
        except EmptyGraph:
            self.mark_degenerate()
            return 0.0
