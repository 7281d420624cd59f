"""Network-probing metrics: dereferenceability and content-type checks.

Probing happens at finalize over the collected (or sampled) term sets so
the accept path stays cheap; the injected probers are memoised per run,
so a term costs at most one probe however many metrics share it.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Set

from ldqa.http_probe import RDF_MEDIA_TYPES, ContentTypeProber, DerefProber
from ldqa.core.instance import MetricInstance, MetricValue
from ldqa.pld import pay_level_domain
from ldqa.sketches.reservoir import TwoLevelReservoir
from ldqa.terms import Iri, Triple


class _TermPool:
    """Either an exact distinct-term set or a two-level PLD reservoir."""

    def __init__(self, sampling: bool, pld_capacity: int, per_pld_capacity: int, seed: int):
        self._exact: Optional[Set[str]] = None if sampling else set()
        self._reservoir = (
            TwoLevelReservoir(pld_capacity, per_pld_capacity, pay_level_domain, seed=seed)
            if sampling
            else None
        )

    def add(self, iri: str) -> None:
        if self._exact is not None:
            self._exact.add(iri)
        else:
            self._reservoir.add(iri)

    def members(self) -> List[str]:
        if self._exact is not None:
            return sorted(self._exact)
        return sorted(self._reservoir.sample())


class Dereferenceability(MetricInstance):
    """(dereferenceable unique subjects + dereferenceable unique objects)
    over total statements; sampling restricts which terms get probed."""

    def __init__(
        self,
        descriptor=None,
        deref_prober: Optional[DerefProber] = None,
        sampling: bool = False,
        pld_capacity: int = 50,
        per_pld_capacity: int = 100,
        seed: int = 0,
    ):
        super().__init__(descriptor)
        if deref_prober is None:
            raise ValueError("dereferenceability needs a dereferenceability prober")
        self._prober = deref_prober
        self._subjects = _TermPool(sampling, pld_capacity, per_pld_capacity, seed)
        self._objects = _TermPool(sampling, pld_capacity, per_pld_capacity, seed + 1)
        self._total = 0

    def _accept(self, triple: Triple) -> None:
        self._total += 1
        if isinstance(triple.subject, Iri):
            self._subjects.add(triple.subject.text)
        if isinstance(triple.object, Iri):
            self._objects.add(triple.object.text)

    def _count_dereferenceable(self, terms: Iterable[str]) -> int:
        hits = 0
        for iri in terms:
            ok, result = self._prober(iri)
            if ok:
                hits += 1
            else:
                detail = "resource does not dereference (no 303, not a hash URI)"
                if result.failure:
                    detail = f"probe failed: {result.failure}"
                self.report_resource(iri, detail)
        return hits

    def _finalize(self, run) -> MetricValue:
        if self._total == 0:
            self.mark_degenerate()
            return 0.0
        hits = self._count_dereferenceable(self._subjects.members())
        hits += self._count_dereferenceable(self._objects.members())
        return hits / self._total


class MisreportedContentTypes(MetricInstance):
    """Fraction of (sampled) resource IRIs answering 200 OK whose
    negotiated content type is an RDF media type."""

    def __init__(
        self,
        descriptor=None,
        ct_prober: Optional[ContentTypeProber] = None,
        sampling: bool = False,
        pld_capacity: int = 50,
        per_pld_capacity: int = 100,
        seed: int = 0,
    ):
        super().__init__(descriptor)
        if ct_prober is None:
            raise ValueError("misreported-content-types needs a content-type prober")
        self._prober = ct_prober
        self._resources = _TermPool(sampling, pld_capacity, per_pld_capacity, seed)

    def _accept(self, triple: Triple) -> None:
        if isinstance(triple.subject, Iri):
            self._resources.add(triple.subject.text)
        if isinstance(triple.object, Iri):
            self._resources.add(triple.object.text)

    def _finalize(self, run) -> MetricValue:
        assessed = 0
        correct = 0
        for iri in self._resources.members():
            result = self._prober(iri)
            if not result.status_chain or result.status_chain[-1] != 200:
                continue
            assessed += 1
            if result.content_type in RDF_MEDIA_TYPES:
                correct += 1
            else:
                self.report_resource(
                    iri,
                    f"negotiated {result.content_type or 'no content type'} instead of an RDF media type",
                )
        if assessed == 0:
            self.mark_degenerate()
            return 0.0
        return correct / assessed
