"""The category -> dimension -> metric taxonomy and implementation bindings.

The hierarchy is configuration, not ontology reasoning: a JSON file names
categories, their dimensions, and each metric's descriptor plus the
implementation it binds to (a builtin name or an LQML source file).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

VALUE_KINDS = ("real", "boolean", "count")


class TaxonomyError(ValueError):
    pass


class DuplicateIri(TaxonomyError):
    pass


class EmptyDimension(TaxonomyError):
    pass


class OrphanMetric(TaxonomyError):
    pass


@dataclass(frozen=True)
class MetricDescriptor:
    metric_iri: str
    label: str
    dimension_iri: str
    category_iri: str
    value_kind: str = "real"
    normalized: bool = True

    def __post_init__(self) -> None:
        if self.value_kind not in VALUE_KINDS:
            raise TaxonomyError(f"unknown value kind {self.value_kind!r}")


@dataclass(frozen=True)
class MetricBinding:
    metric_iri: str
    builtin: Optional[str] = None
    lqml_path: Optional[str] = None

    def __post_init__(self) -> None:
        if (self.builtin is None) == (self.lqml_path is None):
            raise TaxonomyError("binding needs exactly one of builtin or lqml path")


@dataclass
class Taxonomy:
    categories: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    dimensions: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    descriptors: Dict[str, MetricDescriptor] = field(default_factory=dict)
    bindings: Dict[str, MetricBinding] = field(default_factory=dict)
    options: Dict[str, dict] = field(default_factory=dict)

    def validate(self) -> None:
        for category, dims in self.categories.items():
            if not dims:
                raise TaxonomyError(f"category {category} has no dimensions")
            for dim in dims:
                if dim not in self.dimensions:
                    raise TaxonomyError(f"category {category} lists unknown dimension {dim}")
        for dim, metrics in self.dimensions.items():
            if not metrics:
                raise EmptyDimension(f"dimension {dim} has no metrics")
            owners = [c for c, dims in self.categories.items() if dim in dims]
            if len(owners) != 1:
                raise TaxonomyError(f"dimension {dim} belongs to {len(owners)} categories")
            for metric in metrics:
                descriptor = self.descriptors.get(metric)
                if descriptor is None:
                    raise OrphanMetric(f"metric {metric} has no descriptor")
                if descriptor.dimension_iri != dim or descriptor.category_iri != owners[0]:
                    raise TaxonomyError(f"metric {metric} descriptor disagrees with the tree")
        for metric, descriptor in self.descriptors.items():
            if descriptor.dimension_iri not in self.dimensions:
                raise OrphanMetric(f"metric {metric} names unknown dimension")
            if metric not in self.dimensions[descriptor.dimension_iri]:
                raise OrphanMetric(f"metric {metric} missing from its dimension")
        for metric in self.bindings:
            if metric not in self.descriptors:
                raise OrphanMetric(f"binding for unknown metric {metric}")

    def dimension_of(self, metric_iri: str) -> str:
        return self.descriptors[metric_iri].dimension_iri

    def category_of(self, dimension_iri: str) -> str:
        for category, dims in self.categories.items():
            if dimension_iri in dims:
                return category
        raise TaxonomyError(f"dimension {dimension_iri} not in any category")

    def metric_iris(self) -> Tuple[str, ...]:
        return tuple(self.descriptors)


def load_taxonomy(source: Union[str, Path, Mapping]) -> Taxonomy:
    """Load and validate a taxonomy from a JSON file, JSON text or mapping."""
    if isinstance(source, Mapping):
        raw = source
    else:
        text = Path(source).read_text("utf-8") if _looks_like_path(source) else str(source)
        raw = json.loads(text)

    taxonomy = Taxonomy()
    for category in raw.get("categories", []):
        category_iri = category["iri"]
        if category_iri in taxonomy.categories:
            raise DuplicateIri(f"category {category_iri} defined twice")
        dim_iris = []
        for dimension in category.get("dimensions", []):
            dimension_iri = dimension["iri"]
            if dimension_iri in taxonomy.dimensions:
                raise DuplicateIri(f"dimension {dimension_iri} defined twice")
            metric_iris = []
            for metric in dimension.get("metrics", []):
                metric_iri = metric["iri"]
                if metric_iri in taxonomy.descriptors:
                    raise DuplicateIri(f"metric {metric_iri} defined twice")
                taxonomy.descriptors[metric_iri] = MetricDescriptor(
                    metric_iri=metric_iri,
                    label=metric.get("label", metric_iri),
                    dimension_iri=dimension_iri,
                    category_iri=category_iri,
                    value_kind=metric.get("kind", "real"),
                    normalized=bool(metric.get("normalized", True)),
                )
                impl = metric.get("impl", {})
                if impl:
                    taxonomy.bindings[metric_iri] = MetricBinding(
                        metric_iri=metric_iri,
                        builtin=impl.get("builtin"),
                        lqml_path=impl.get("lqml"),
                    )
                if metric.get("options"):
                    taxonomy.options[metric_iri] = dict(metric["options"])
                metric_iris.append(metric_iri)
            taxonomy.dimensions[dimension_iri] = tuple(metric_iris)
            dim_iris.append(dimension_iri)
        taxonomy.categories[category_iri] = tuple(dim_iris)
    taxonomy.validate()
    return taxonomy


def _looks_like_path(source: Union[str, Path]) -> bool:
    if isinstance(source, Path):
        return True
    stripped = source.lstrip()
    return not stripped.startswith("{")
