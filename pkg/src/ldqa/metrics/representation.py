"""Representation and interpretability metrics: URI shape, container
usage, blank node density, language coverage.
"""

from __future__ import annotations

from typing import Dict, Set

from ldqa import vocab
from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.ntriples import format_term
from ldqa.pld import pay_level_domain
from ldqa.terms import BlankNode, Iri, Literal, Triple, resource_id

MAX_URI_LENGTH = 80
LARGE_DATASET_TRIPLES = 500_000

_COLLECTION_TERMS = frozenset(
    {vocab.RDF_FIRST, vocab.RDF_REST, vocab.RDF_SEQ, vocab.RDF_BAG, vocab.RDF_ALT}
)


class ShortUris(MetricInstance):
    """Fraction of distinct subject IRIs at most 80 characters long and
    free of query parameters."""

    def __init__(self, descriptor=None):
        super().__init__(descriptor)
        self._subjects: Set[str] = set()

    def _accept(self, triple: Triple) -> None:
        if isinstance(triple.subject, Iri):
            self._subjects.add(triple.subject.text)

    def _finalize(self, run) -> MetricValue:
        if not self._subjects:
            self.mark_degenerate()
            return 0.0
        compliant = 0
        for iri in sorted(self._subjects):
            if len(iri) <= MAX_URI_LENGTH and "?" not in iri:
                compliant += 1
            else:
                self.report_resource(iri, "URI longer than 80 characters or parameterised")
        return compliant / len(self._subjects)


class NoRdfCollections(MetricInstance):
    """1 minus the share of statements using RDF collection or container
    vocabulary (rdf:first, rdf:rest, rdf:Seq, rdf:Bag, rdf:Alt)."""

    def __init__(self, descriptor=None):
        super().__init__(descriptor)
        self._total = 0
        self._collections = 0

    def _accept(self, triple: Triple) -> None:
        self._total += 1
        if triple.predicate.text in _COLLECTION_TERMS or (
            isinstance(triple.object, Iri) and triple.object.text in _COLLECTION_TERMS
        ):
            self._collections += 1
            self.report_statement(triple, "statement uses an RDF collection or container")

    def _finalize(self, run) -> MetricValue:
        if self._total == 0:
            self.mark_degenerate()
            return 0.0
        return 1.0 - self._collections / self._total


class HashVsSlashUris(MetricInstance):
    """Hash-URI share for small datasets, slash-URI share for large ones.

    Only IRIs local to the dataset's pay-level domain are considered; the
    large-dataset branch starts at 500K triples.
    """

    def __init__(self, descriptor=None, base_iri: str = ""):
        super().__init__(descriptor)
        self._base_pld = pay_level_domain(base_iri) if base_iri else ""
        self._hash: Set[str] = set()
        self._slash: Set[str] = set()
        self._total = 0

    def _local(self, iri: str) -> bool:
        return not self._base_pld or pay_level_domain(iri) == self._base_pld

    def _classify(self, iri: str) -> None:
        if not self._local(iri):
            return
        if "#" in iri:
            self._hash.add(iri)
        else:
            self._slash.add(iri)

    def _accept(self, triple: Triple) -> None:
        self._total += 1
        for term in (triple.subject, triple.predicate, triple.object):
            if isinstance(term, Iri):
                self._classify(term.text)

    def _finalize(self, run) -> MetricValue:
        population = len(self._hash) + len(self._slash)
        if population == 0:
            self.mark_degenerate()
            return 0.0
        if self._total < LARGE_DATASET_TRIPLES:
            preferred, dispreferred, why = self._hash, self._slash, "slash URI in a small dataset"
        else:
            preferred, dispreferred, why = self._slash, self._hash, "hash URI in a large dataset"
        for iri in sorted(dispreferred):
            self.report_resource(iri, why)
        return len(preferred) / population


class LowBlankNodeUsage(MetricInstance):
    """1 minus the share of blank nodes among distinct resource terms."""

    def __init__(self, descriptor=None):
        super().__init__(descriptor)
        self._blanks: Set[str] = set()
        self._terms: Set[str] = set()

    def _note(self, term) -> None:
        if isinstance(term, Iri):
            self._terms.add(term.text)
        elif isinstance(term, BlankNode):
            surface = resource_id(term)
            self._terms.add(surface)
            self._blanks.add(surface)

    def _accept(self, triple: Triple) -> None:
        self._note(triple.subject)
        self._note(triple.object)

    def _finalize(self, run) -> MetricValue:
        if not self._terms:
            self.mark_degenerate()
            return 0.0
        for blank in sorted(self._blanks):
            self.report_resource(blank, "blank node cannot be resolved externally")
        return 1.0 - len(self._blanks) / len(self._terms)


class MultipleLanguageUsage(MetricInstance):
    """Average number of distinct language tags per subject that carries
    any language-tagged literal. A count, not a normalized ratio."""

    def __init__(self, descriptor=None):
        super().__init__(descriptor)
        self._tags: Dict[str, Set[str]] = {}

    def _accept(self, triple: Triple) -> None:
        if isinstance(triple.object, Literal) and triple.object.language:
            key = format_term(triple.subject)
            self._tags.setdefault(key, set()).add(triple.object.language.lower())

    def _finalize(self, run) -> MetricValue:
        if not self._tags:
            self.mark_degenerate()
            return 0.0
        return sum(len(tags) for tags in self._tags.values()) / len(self._tags)
