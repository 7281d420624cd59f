"""Locally loaded vocabulary knowledge and the schema-conformance metrics.

Vocabularies are directories of N-Triples files; no live lookup service
is consulted. A term counts as defined when it occurs as the subject of
any vocabulary statement (core RDF/RDFS/OWL/XSD terms are always defined).
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple, Union

from ldqa import vocab
from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.ntriples import LineError, parse_ntriples
from ldqa.sketches.reservoir import Reservoir
from ldqa.terms import Iri, Triple

_CORE_NAMESPACES = (vocab.RDF, vocab.RDFS, vocab.OWL, vocab.XSD)


class VocabularyStore:
    def __init__(self) -> None:
        self.defined: Set[str] = set()
        self._superclasses: Dict[str, Set[str]] = {}
        self._disjoint: Set[FrozenSet[str]] = set()

    @classmethod
    def empty(cls) -> "VocabularyStore":
        return cls()

    @classmethod
    def from_dir(cls, directory: Union[str, Path]) -> "VocabularyStore":
        paths = sorted(Path(directory).glob("*.nt"))
        return cls.from_files(paths)

    @classmethod
    def from_files(cls, paths: Iterable[Union[str, Path]]) -> "VocabularyStore":
        store = cls()
        for path in paths:
            with open(path, "rb") as handle:
                for event in parse_ntriples(handle):
                    if isinstance(event, LineError):
                        continue
                    store._add(event)
        return store

    def _add(self, triple: Triple) -> None:
        if isinstance(triple.subject, Iri):
            self.defined.add(triple.subject.text)
            if triple.predicate.text == vocab.RDFS_SUBCLASSOF and isinstance(triple.object, Iri):
                self._superclasses.setdefault(triple.subject.text, set()).add(triple.object.text)
            if triple.predicate.text == vocab.OWL_DISJOINTWITH and isinstance(triple.object, Iri):
                self._disjoint.add(frozenset((triple.subject.text, triple.object.text)))

    def is_defined(self, term: str) -> bool:
        if term.startswith(_CORE_NAMESPACES):
            return True
        return term in self.defined

    def superclass_closure(self, types: Iterable[str]) -> Set[str]:
        closure: Set[str] = set()
        frontier = list(types)
        while frontier:
            current = frontier.pop()
            if current in closure:
                continue
            closure.add(current)
            frontier.extend(self._superclasses.get(current, ()))
        return closure

    def disjoint_pair(self, types: Set[str]) -> Optional[Tuple[str, str]]:
        ordered = sorted(types)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                if frozenset((a, b)) in self._disjoint:
                    return a, b
        return None


class UndefinedClassesAndProperties(MetricInstance):
    """Fraction of used schema terms (predicates and rdf:type objects)
    that are defined in the loaded vocabularies."""

    def __init__(self, descriptor=None, store: Optional[VocabularyStore] = None):
        super().__init__(descriptor)
        self._store = store or VocabularyStore.empty()
        self._terms: Set[str] = set()

    def _accept(self, triple: Triple) -> None:
        self._terms.add(triple.predicate.text)
        if triple.predicate.text == vocab.RDF_TYPE and isinstance(triple.object, Iri):
            self._terms.add(triple.object.text)

    def _finalize(self, run) -> MetricValue:
        if not self._terms:
            self.mark_degenerate()
            return 0.0
        defined = 0
        for term in sorted(self._terms):
            if self._store.is_defined(term):
                defined += 1
            else:
                self.report_resource(term, "term not defined in any loaded vocabulary")
        return defined / len(self._terms)


class MemberOfDisjointClasses(MetricInstance):
    """1 minus the fraction of sampled typed resources whose type closure
    contains a pair of explicitly disjoint classes."""

    def __init__(
        self,
        descriptor=None,
        store: Optional[VocabularyStore] = None,
        sampling: bool = False,
        capacity: int = 1000,
        seed: int = 0,
    ):
        super().__init__(descriptor)
        self._store = store or VocabularyStore.empty()
        self._sample: Optional[Reservoir[str]] = (
            Reservoir(capacity, seed=seed, distinct=True) if sampling else None
        )
        self._resources: Set[str] = set()
        self._types: Dict[str, Set[str]] = {}

    def _accept(self, triple: Triple) -> None:
        if triple.predicate.text != vocab.RDF_TYPE or not isinstance(triple.object, Iri):
            return
        if not isinstance(triple.subject, Iri):
            return
        subject = triple.subject.text
        if self._sample is not None:
            self._sample.add(subject)
            if subject in self._sample:
                self._types.setdefault(subject, set()).add(triple.object.text)
        else:
            self._resources.add(subject)
            self._types.setdefault(subject, set()).add(triple.object.text)

    def _finalize(self, run) -> MetricValue:
        resources = set(self._sample.items) if self._sample is not None else self._resources
        if not resources:
            self.mark_degenerate()
            return 0.0
        violators = 0
        for resource in sorted(resources):
            closure = self._store.superclass_closure(self._types.get(resource, ()))
            pair = self._store.disjoint_pair(closure)
            if pair is not None:
                violators += 1
                self.report_resource(
                    resource, f"typed as disjoint classes {pair[0]} and {pair[1]}"
                )
        return 1.0 - violators / len(resources)
