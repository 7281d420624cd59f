"""Metrics over dataset self-description: licensing, provenance, VoID features.

These all score the declared dataset nodes (subjects typed void:Dataset
or dcat:Dataset) or prov:Activity nodes, so they read dumps that carry
their own metadata, e.g. a VoID file streamed with the data.
"""

from __future__ import annotations

from typing import FrozenSet, Optional, Set

from ldqa import vocab
from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.terms import Iri, Literal, RdfTerm, Triple, resource_id

DATASET_TYPES = frozenset({vocab.VOID_DATASET, vocab.DCAT_DATASET})

LICENSE_PROPS = frozenset({vocab.DCTERMS + "license", vocab.CC + "license"})
PROVENANCE_PROPS = frozenset(
    {
        vocab.DC11 + "creator",
        vocab.DC11 + "publisher",
        vocab.DCTERMS + "creator",
        vocab.DCTERMS + "publisher",
    }
)
FEATURE_PROPS = frozenset({vocab.VOID_FEATURE})

HUMAN_LICENSE_PROPS = frozenset(
    {vocab.RDFS_LABEL, vocab.RDFS_COMMENT, vocab.DCTERMS + "description"}
)
LICENSE_LEXICON = ("license", "licence", "copyright", "cc-by", "public domain")


class DatasetNodeRatio(MetricInstance):
    """Fraction of declared dataset nodes carrying at least one of the
    configured properties; missing nodes become problems."""

    props: FrozenSet[str] = frozenset()
    missing_detail = "required property missing"

    def __init__(self, descriptor=None):
        super().__init__(descriptor)
        self._nodes: Set[RdfTerm] = set()
        self._satisfied: Set[RdfTerm] = set()

    def _accept(self, triple: Triple) -> None:
        if (
            triple.predicate.text == vocab.RDF_TYPE
            and isinstance(triple.object, Iri)
            and triple.object.text in DATASET_TYPES
        ):
            self._nodes.add(triple.subject)
        if triple.predicate.text in self.props:
            self._satisfied.add(triple.subject)

    def _finalize(self, run) -> MetricValue:
        if not self._nodes:
            self.mark_degenerate()
            return 0.0
        for node in sorted(self._nodes - self._satisfied, key=resource_id):
            self.report_resource(resource_id(node), self.missing_detail)
        return len(self._nodes & self._satisfied) / len(self._nodes)


class MachineReadableLicense(DatasetNodeRatio):
    props = LICENSE_PROPS
    missing_detail = "dataset node has no machine-readable license"


class BasicProvenance(DatasetNodeRatio):
    props = PROVENANCE_PROPS
    missing_detail = "dataset node names neither a creator nor a publisher"


class DifferentSerialisations(DatasetNodeRatio):
    props = FEATURE_PROPS
    missing_detail = "dataset node declares no serialisation feature"


class HumanReadableLicense(MetricInstance):
    """True when any descriptive literal mentions a licensing term."""

    def __init__(self, descriptor=None, dataset_iri: str = ""):
        super().__init__(descriptor)
        self._dataset_iri = dataset_iri
        self._found = False

    def _accept(self, triple: Triple) -> None:
        if self._found or triple.predicate.text not in HUMAN_LICENSE_PROPS:
            return
        if isinstance(triple.object, Literal):
            lowered = triple.object.lexical.lower()
            if any(term in lowered for term in LICENSE_LEXICON):
                self._found = True

    def _finalize(self, run) -> MetricValue:
        if not self._found and self._dataset_iri:
            self.report_resource(self._dataset_iri, "no human-readable license text found")
        return self._found


class ExtendedProvenance(MetricInstance):
    """Fraction of prov:Activity nodes that name both an associated agent
    and a used data source."""

    def __init__(self, descriptor=None):
        super().__init__(descriptor)
        self._activities: Set[RdfTerm] = set()
        self._with_agent: Set[RdfTerm] = set()
        self._with_source: Set[RdfTerm] = set()

    def _accept(self, triple: Triple) -> None:
        subject = triple.subject
        if (
            triple.predicate.text == vocab.RDF_TYPE
            and isinstance(triple.object, Iri)
            and triple.object.text == vocab.PROV_ACTIVITY
        ):
            self._activities.add(subject)
        elif triple.predicate.text == vocab.PROV_WAS_ASSOCIATED_WITH:
            self._with_agent.add(subject)
        elif triple.predicate.text == vocab.PROV_USED:
            self._with_source.add(subject)

    def _finalize(self, run) -> MetricValue:
        if not self._activities:
            self.mark_degenerate()
            return 0.0
        attributable = self._activities & self._with_agent & self._with_source
        for node in sorted(self._activities - attributable, key=resource_id):
            self.report_resource(
                resource_id(node), "activity lacks an associated agent or a used source"
            )
        return len(attributable) / len(self._activities)
