"""Metric instance lifecycle: ready -> accepting* -> finalized.

Value and problems are only readable after finalize; violating the order
raises deterministically. Subclasses implement ``_accept`` and
``_finalize`` and report problems through the helpers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Union

from ldqa.terms import Triple

if TYPE_CHECKING:
    from ldqa.core.descriptors import MetricDescriptor
    from ldqa.pipeline import AssessmentRun

MetricValue = Union[float, bool, int]

READY = "ready"
ACCEPTING = "accepting"
FINALIZED = "finalized"


class LifecycleError(RuntimeError):
    """A call arrived outside the legal ready -> accepting -> finalized order."""


class NotFinalized(LifecycleError):
    """Value or problems requested before finalize."""


@dataclass(frozen=True)
class ProblemItem:
    metric_iri: str
    resource: Optional[str] = None
    statement: Optional[Triple] = None
    detail: str = ""

    def __post_init__(self) -> None:
        if (self.resource is None) == (self.statement is None):
            raise ValueError("a problem names exactly one of resource or statement")


class MetricInstance:
    """Base class for all metric implementations (builtin and compiled)."""

    def __init__(self, descriptor: Optional["MetricDescriptor"] = None):
        self.descriptor = descriptor
        self.state = READY
        self.accept_count = 0
        self.problems: List[ProblemItem] = []
        self.degenerate = False
        self._value: Optional[MetricValue] = None

    @property
    def metric_iri(self) -> str:
        return self.descriptor.metric_iri if self.descriptor else ""

    def accept(self, triple: Triple) -> None:
        if self.state == FINALIZED:
            raise LifecycleError(f"{self.metric_iri or type(self).__name__}: accept after finalize")
        self.state = ACCEPTING
        self._accept(triple)
        self.accept_count += 1

    def finalize(self, run: Optional["AssessmentRun"] = None) -> None:
        if self.state == FINALIZED:
            raise LifecycleError(f"{self.metric_iri or type(self).__name__}: finalize twice")
        self._value = self._finalize(run)
        self.state = FINALIZED

    @property
    def value(self) -> MetricValue:
        if self.state != FINALIZED:
            raise NotFinalized("metric value is only readable after finalize")
        return self._value  # type: ignore[return-value]

    def collect(self) -> tuple[MetricValue, List[ProblemItem]]:
        """Finalized value coerced to the descriptor's value kind, plus problems."""
        value = self.value
        if self.descriptor is not None:
            kind = self.descriptor.value_kind
            if kind == "boolean":
                value = bool(value)
            elif kind == "count":
                value = float(value)
            else:
                value = float(value)
        return value, list(self.problems)

    def report_resource(self, iri: str, detail: str = "") -> None:
        self.problems.append(ProblemItem(self.metric_iri, resource=iri, detail=detail))

    def report_statement(self, triple: Triple, detail: str = "") -> None:
        self.problems.append(ProblemItem(self.metric_iri, statement=triple, detail=detail))

    def mark_degenerate(self) -> None:
        """Record that the value came from a degenerate input (empty denominator)."""
        self.degenerate = True

    def _accept(self, triple: Triple) -> None:
        raise NotImplementedError

    def _finalize(self, run: Optional["AssessmentRun"]) -> MetricValue:
        raise NotImplementedError
