"""Quality metadata: observations, problem reports, and the local store."""

from ldqa.metadata.model import (
    MalformedMetadata,
    Observation,
    QualityProblem,
    QualityReport,
    ReifiedStatements,
    ResourceList,
)
from ldqa.metadata.emit import emit_observations, emit_report, parse_metadata
from ldqa.metadata.store import DuplicateObservation, MetadataStore, UnknownDataset, dataset_slug

__all__ = [
    "Observation",
    "QualityReport",
    "QualityProblem",
    "ResourceList",
    "ReifiedStatements",
    "MalformedMetadata",
    "emit_observations",
    "emit_report",
    "parse_metadata",
    "MetadataStore",
    "UnknownDataset",
    "DuplicateObservation",
    "dataset_slug",
]
