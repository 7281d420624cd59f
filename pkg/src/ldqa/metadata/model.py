"""Data model for quality observations and problem reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Tuple, Union

from ldqa.ntriples import format_triple
from ldqa.terms import Triple


class MalformedMetadata(ValueError):
    pass


@dataclass(frozen=True)
class Observation:
    dataset_iri: str
    metric_iri: str
    value: Union[float, bool, int]
    observed_at: datetime
    graph_iri: Optional[str] = None

    def __post_init__(self) -> None:
        if self.observed_at.tzinfo is None:
            object.__setattr__(self, "observed_at", self.observed_at.replace(tzinfo=timezone.utc))

    @property
    def value_kind(self) -> str:
        if isinstance(self.value, bool):
            return "boolean"
        if isinstance(self.value, int):
            return "count"
        return "real"


@dataclass(frozen=True)
class ResourceList:
    resources: Tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.resources:
            raise MalformedMetadata("a problem must name at least one resource")

    def canonical(self) -> str:
        return "R|" + "\n".join(self.resources)


@dataclass(frozen=True)
class ReifiedStatements:
    statements: Tuple[Triple, ...]

    def __post_init__(self) -> None:
        if not self.statements:
            raise MalformedMetadata("a problem must carry at least one statement")

    def canonical(self) -> str:
        return "S|" + "\n".join(format_triple(t) for t in self.statements)


ProblematicThing = Union[ResourceList, ReifiedStatements]


@dataclass(frozen=True)
class QualityProblem:
    described_by: str
    problematic_thing: ProblematicThing
    in_graph: Optional[str] = None

    def canonical(self) -> str:
        return f"{self.described_by}|{self.problematic_thing.canonical()}|{self.in_graph or ''}"


@dataclass(frozen=True)
class QualityReport:
    computed_on: str
    problems: Tuple[QualityProblem, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.computed_on:
            raise MalformedMetadata("a report must name the dataset it was computed on")

    @classmethod
    def make(cls, computed_on: str, problems=()) -> "QualityReport":
        """Build a report with problems deduplicated and in canonical order,
        so emit/parse round-trips are structural identities."""
        unique = {p.canonical(): p for p in problems}
        ordered = tuple(unique[key] for key in sorted(unique))
        return cls(computed_on, ordered)
