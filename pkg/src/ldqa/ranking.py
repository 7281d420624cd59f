"""User-weighted dataset ranking.

Scores build up from three aggregation levels: a weighted metric value is
theta * v; a weighted dimension value applies its theta evenly across the
dimension's metrics (theta * mean); a weighted category value averages its
dimensions' weighted values. A dataset's total is the sum over the nodes
the user weighted, and the ranking sorts totals descending with ties
broken by ascending dataset IRI.

Only normalized metrics participate (booleans coerced to 0/1); metrics
not marked normalized are excluded with a logged warning, and missing
observations are a hard error rather than silently imputed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

from ldqa.core.descriptors import Taxonomy
from ldqa.metadata.store import MetadataStore

logger = logging.getLogger(__name__)

LEVELS = ("metric", "dimension", "category")


class EmptyDimension(ValueError):
    pass


class EmptyCategory(ValueError):
    pass


class InvalidWeightTarget(ValueError):
    pass


class NegativeWeight(ValueError):
    pass


class MissingObservation(KeyError):
    def __init__(self, dataset_iri: str, metric_iri: str):
        super().__init__(f"{dataset_iri} has no observation for {metric_iri}")
        self.dataset_iri = dataset_iri
        self.metric_iri = metric_iri


@dataclass(frozen=True)
class WeightConfig:
    level: str
    weights: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.level not in LEVELS:
            raise InvalidWeightTarget(f"unknown weighting level {self.level!r}")
        for iri, theta in self.weights.items():
            if theta < 0:
                raise NegativeWeight(f"weight for {iri} is negative")

    def validate_against(self, taxonomy: Taxonomy) -> None:
        if self.level == "metric":
            known = set(taxonomy.descriptors)
        elif self.level == "dimension":
            known = set(taxonomy.dimensions)
        else:
            known = set(taxonomy.categories)
        for iri in self.weights:
            if iri not in known:
                raise InvalidWeightTarget(f"{iri} is not a {self.level} in the taxonomy")


@dataclass(frozen=True)
class Contribution:
    node_iri: str
    amount: float


@dataclass(frozen=True)
class RankedEntry:
    dataset_iri: str
    total: float
    breakdown: Tuple[Contribution, ...]


@dataclass(frozen=True)
class RankedResult:
    level: str
    entries: Tuple[RankedEntry, ...]


def weighted_metric_value(value: float, theta: float) -> float:
    return theta * value


def weighted_dimension_value(metric_values: Sequence[float], theta: float) -> float:
    if not metric_values:
        raise EmptyDimension("a dimension needs at least one metric value")
    return theta * sum(metric_values) / len(metric_values)


def weighted_category_value(dimension_values: Sequence[float]) -> float:
    """Combine per-dimension weighted values (already carrying the
    category's theta) by averaging over the category's dimensions."""
    if not dimension_values:
        raise EmptyCategory("a category needs at least one dimension value")
    return sum(dimension_values) / len(dimension_values)


def _coerce(value: Union[float, bool, int]) -> float:
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    return float(value)


def _rankable_metrics(taxonomy: Taxonomy) -> Dict[str, Tuple[str, ...]]:
    """dimension -> its normalized metrics; non-normalized ones are dropped."""
    rankable: Dict[str, List[str]] = {dim: [] for dim in taxonomy.dimensions}
    for metric_iri, descriptor in taxonomy.descriptors.items():
        if descriptor.normalized:
            rankable[descriptor.dimension_iri].append(metric_iri)
        else:
            logger.warning(
                "metric %s is not normalized and is excluded from ranking", metric_iri
            )
    return {dim: tuple(sorted(metrics)) for dim, metrics in rankable.items()}


def _metric_value(
    values: Dict[str, Union[float, bool, int]], dataset_iri: str, metric_iri: str
) -> float:
    if metric_iri not in values:
        raise MissingObservation(dataset_iri, metric_iri)
    return _coerce(values[metric_iri])


def score_dataset(
    dataset_iri: str,
    values: Dict[str, Union[float, bool, int]],
    config: WeightConfig,
    taxonomy: Taxonomy,
) -> Tuple[float, Tuple[Contribution, ...]]:
    """Total score plus the per-weighted-node contribution breakdown."""
    rankable = _rankable_metrics(taxonomy)
    contributions: List[Contribution] = []

    if config.level == "metric":
        for metric_iri in sorted(config.weights):
            descriptor = taxonomy.descriptors[metric_iri]
            if not descriptor.normalized:
                logger.warning("weighted metric %s is not normalized; skipped", metric_iri)
                continue
            value = _metric_value(values, dataset_iri, metric_iri)
            contributions.append(
                Contribution(metric_iri, weighted_metric_value(value, config.weights[metric_iri]))
            )
    elif config.level == "dimension":
        for dimension_iri in sorted(config.weights):
            metrics = rankable[dimension_iri]
            if not metrics:
                raise EmptyDimension(f"dimension {dimension_iri} has no rankable metrics")
            metric_values = [_metric_value(values, dataset_iri, m) for m in metrics]
            contributions.append(
                Contribution(
                    dimension_iri,
                    weighted_dimension_value(metric_values, config.weights[dimension_iri]),
                )
            )
    else:
        for category_iri in sorted(config.weights):
            theta = config.weights[category_iri]
            dimension_values = []
            for dimension_iri in taxonomy.categories[category_iri]:
                metrics = rankable[dimension_iri]
                if not metrics:
                    continue  # dimension dropped entirely from ranking
                metric_values = [_metric_value(values, dataset_iri, m) for m in metrics]
                dimension_values.append(weighted_dimension_value(metric_values, theta))
            if not dimension_values:
                raise EmptyCategory(f"category {category_iri} has no rankable dimensions")
            contributions.append(
                Contribution(category_iri, weighted_category_value(dimension_values))
            )

    total = sum(c.amount for c in contributions)
    return total, tuple(contributions)


def rank_datasets(
    store: MetadataStore, config: WeightConfig, taxonomy: Taxonomy
) -> RankedResult:
    """Rank every dataset in the store by its weighted total."""
    config.validate_against(taxonomy)
    entries: List[RankedEntry] = []
    for dataset_iri in store.dataset_iris():
        values = store.latest_values(dataset_iri)
        total, breakdown = score_dataset(dataset_iri, values, config, taxonomy)
        entries.append(RankedEntry(dataset_iri, total, breakdown))
    entries.sort(key=lambda e: (-e.total, e.dataset_iri))
    return RankedResult(config.level, tuple(entries))
