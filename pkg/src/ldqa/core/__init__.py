"""Metric taxonomy, lifecycle contract and metric-to-implementation binding."""

from ldqa.core.descriptors import (
    DuplicateIri,
    EmptyDimension,
    MetricBinding,
    MetricDescriptor,
    OrphanMetric,
    Taxonomy,
    TaxonomyError,
    load_taxonomy,
)
from ldqa.core.instance import (
    LifecycleError,
    MetricInstance,
    MetricValue,
    NotFinalized,
    ProblemItem,
)
from ldqa.core.registry import (
    MetricContext,
    UnknownBuiltin,
    default_builtins,
    instantiate,
)

__all__ = [
    "MetricDescriptor",
    "Taxonomy",
    "MetricBinding",
    "TaxonomyError",
    "DuplicateIri",
    "EmptyDimension",
    "OrphanMetric",
    "load_taxonomy",
    "MetricInstance",
    "MetricValue",
    "ProblemItem",
    "LifecycleError",
    "NotFinalized",
    "MetricContext",
    "UnknownBuiltin",
    "default_builtins",
    "instantiate",
]
