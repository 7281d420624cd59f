"""End-to-end assessment: instantiate bound metrics, stream, collect metadata.

This is the programmatic face of the pipeline; the CLI and tests drive it
with injected probers and vocabulary stores.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence, Tuple

from ldqa.core.descriptors import Taxonomy
from ldqa.core.instance import MetricInstance, MetricValue, ProblemItem
from ldqa.core.registry import MetricContext, instantiate
from ldqa.metadata.model import (
    Observation,
    QualityProblem,
    QualityReport,
    ReifiedStatements,
    ResourceList,
)
from ldqa.pipeline import AssessmentRun, DatasetSource, stream_dataset


@dataclass
class MetricOutcome:
    metric_iri: str
    label: str
    value: MetricValue
    problems: List[ProblemItem]
    degenerate: bool


@dataclass
class AssessmentResult:
    run: AssessmentRun
    outcomes: List[MetricOutcome]
    observed_at: datetime
    graph_iri: Optional[str] = None

    def observations(self) -> List[Observation]:
        return [
            Observation(
                dataset_iri=self.run.dataset_iri,
                metric_iri=outcome.metric_iri,
                value=outcome.value,
                observed_at=self.observed_at,
                graph_iri=self.graph_iri,
            )
            for outcome in self.outcomes
        ]

    def report(self) -> QualityReport:
        problems: List[QualityProblem] = []
        for outcome in self.outcomes:
            resources = [p.resource for p in outcome.problems if p.resource is not None]
            statements = [p.statement for p in outcome.problems if p.statement is not None]
            if resources:
                problems.append(
                    QualityProblem(
                        described_by=outcome.metric_iri,
                        problematic_thing=ResourceList(tuple(resources)),
                        in_graph=self.graph_iri,
                    )
                )
            if statements:
                problems.append(
                    QualityProblem(
                        described_by=outcome.metric_iri,
                        problematic_thing=ReifiedStatements(tuple(statements)),
                        in_graph=self.graph_iri,
                    )
                )
        return QualityReport.make(self.run.dataset_iri, problems)


def build_instances(
    taxonomy: Taxonomy,
    context: MetricContext,
    selected: Optional[Sequence[str]] = None,
) -> List[Tuple[str, MetricInstance]]:
    """Instantiate every bound (selected) metric up front, so a bad binding
    fails before any triple is read."""
    wanted = list(selected) if selected is not None else sorted(taxonomy.bindings)
    unknown = [iri for iri in wanted if iri not in taxonomy.descriptors]
    if unknown:
        raise KeyError(f"metrics not in the taxonomy: {', '.join(unknown)}")
    unbound = [iri for iri in wanted if iri not in taxonomy.bindings]
    if unbound:
        raise KeyError(f"metrics without implementations: {', '.join(unbound)}")
    instances = []
    for metric_iri in wanted:
        binding = taxonomy.bindings[metric_iri]
        descriptor = taxonomy.descriptors[metric_iri]
        instances.append((metric_iri, instantiate(binding, descriptor, context)))
    return instances


def assess(
    source: DatasetSource,
    taxonomy: Taxonomy,
    context: MetricContext,
    selected: Optional[Sequence[str]] = None,
    parallel: bool = False,
    graph_iri: Optional[str] = None,
) -> AssessmentResult:
    instances = build_instances(taxonomy, context, selected)
    run = stream_dataset(
        source,
        [instance for _, instance in instances],
        dataset_iri=context.dataset_iri,
        parallel=parallel,
    )
    outcomes = []
    for metric_iri, instance in instances:
        value, problems = instance.collect()
        outcomes.append(
            MetricOutcome(
                metric_iri=metric_iri,
                label=taxonomy.descriptors[metric_iri].label,
                value=value,
                problems=problems,
                degenerate=instance.degenerate,
            )
        )
    return AssessmentResult(
        run=run,
        outcomes=outcomes,
        observed_at=datetime.now(timezone.utc),
        graph_iri=graph_iri,
    )
