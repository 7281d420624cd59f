"""Durable quality-metadata store: append-only N-Triples files per dataset
plus an in-memory index rebuilt on load.
"""

from __future__ import annotations

import hashlib
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from ldqa.metadata.emit import emit_observations, emit_report, parse_metadata
from ldqa.metadata.model import Observation, QualityProblem, QualityReport


class UnknownDataset(KeyError):
    pass


class DuplicateObservation(ValueError):
    pass


def dataset_slug(dataset_iri: str) -> str:
    """Deterministic filesystem-safe handle for a dataset IRI."""
    bare = re.sub(r"^[a-z][a-z0-9+.-]*://", "", dataset_iri, flags=re.IGNORECASE)
    cleaned = re.sub(r"[^A-Za-z0-9]+", "-", bare).strip("-").lower() or "dataset"
    return f"{cleaned[:60]}-{hashlib.sha1(dataset_iri.encode('utf-8')).hexdigest()[:8]}"


@dataclass
class _DatasetEntry:
    dataset_iri: str
    observations: List[Observation] = field(default_factory=list)
    reports: List[QualityReport] = field(default_factory=list)


class MetadataStore:
    """Reads and appends `<slug>.quality.nt` / `<slug>.problems.nt` files."""

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._entries: Dict[str, _DatasetEntry] = {}
        self._mtimes: Dict[str, float] = {}
        self.reload()

    # -- loading ------------------------------------------------------------

    def _scan(self) -> Dict[str, float]:
        return {
            path.name: path.stat().st_mtime
            for path in sorted(self.directory.glob("*.nt"))
        }

    def reload(self) -> None:
        with self._lock:
            self._mtimes = self._scan()
            self._entries = {}
            for name in self._mtimes:
                text = (self.directory / name).read_text("utf-8")
                observations, reports = parse_metadata(text)
                for observation in observations:
                    entry = self._entries.setdefault(
                        observation.dataset_iri, _DatasetEntry(observation.dataset_iri)
                    )
                    key = (observation.metric_iri, observation.observed_at)
                    if any(
                        (o.metric_iri, o.observed_at) == key for o in entry.observations
                    ):
                        raise DuplicateObservation(
                            f"{observation.dataset_iri} already has an observation for "
                            f"{observation.metric_iri} at {observation.observed_at}"
                        )
                    entry.observations.append(observation)
                for report in reports:
                    entry = self._entries.setdefault(
                        report.computed_on, _DatasetEntry(report.computed_on)
                    )
                    entry.reports.append(report)

    def refresh_if_changed(self) -> bool:
        with self._lock:
            changed = self._scan() != self._mtimes
        if changed:
            self.reload()
        return changed

    # -- appending ------------------------------------------------------------

    def append_run(
        self,
        dataset_iri: str,
        observations: Iterable[Observation],
        report: Optional[QualityReport] = None,
    ) -> None:
        """Append one assessment run's metadata; prior history is untouched."""
        observations = list(observations)
        with self._lock:
            entry = self._entries.setdefault(dataset_iri, _DatasetEntry(dataset_iri))
            existing = {(o.metric_iri, o.observed_at) for o in entry.observations}
            for observation in observations:
                if observation.dataset_iri != dataset_iri:
                    raise ValueError("observation belongs to a different dataset")
                if (observation.metric_iri, observation.observed_at) in existing:
                    raise DuplicateObservation(
                        f"duplicate observation for {observation.metric_iri}"
                    )
            slug = dataset_slug(dataset_iri)
            if observations:
                quality_path = self.directory / f"{slug}.quality.nt"
                with open(quality_path, "a", encoding="utf-8") as handle:
                    handle.write(emit_observations(observations))
                entry.observations.extend(observations)
            if report is not None:
                problems_path = self.directory / f"{slug}.problems.nt"
                with open(problems_path, "a", encoding="utf-8") as handle:
                    handle.write(emit_report(report))
                entry.reports.append(report)
            self._mtimes = self._scan()

    # -- queries ------------------------------------------------------------

    def datasets(self) -> List[Tuple[str, str]]:
        """(slug, dataset IRI) pairs, sorted by IRI."""
        with self._lock:
            return sorted(
                (dataset_slug(iri), iri) for iri in self._entries
            )

    def dataset_by_slug(self, slug: str) -> str:
        with self._lock:
            for iri in self._entries:
                if dataset_slug(iri) == slug:
                    return iri
        raise UnknownDataset(slug)

    def _entry(self, dataset_iri: str) -> _DatasetEntry:
        entry = self._entries.get(dataset_iri)
        if entry is None:
            raise UnknownDataset(dataset_iri)
        return entry

    def observations_for(self, dataset_iri: str) -> List[Observation]:
        with self._lock:
            return sorted(
                self._entry(dataset_iri).observations,
                key=lambda o: (o.metric_iri, o.observed_at),
            )

    def latest_values(self, dataset_iri: str) -> Dict[str, Union[float, bool, int]]:
        """Latest observation value per metric for one dataset."""
        with self._lock:
            entry = self._entry(dataset_iri)
            latest: Dict[str, Observation] = {}
            for observation in entry.observations:
                current = latest.get(observation.metric_iri)
                if current is None or observation.observed_at > current.observed_at:
                    latest[observation.metric_iri] = observation
            return {metric: obs.value for metric, obs in latest.items()}

    def problems_for(self, dataset_iri: str) -> List[QualityProblem]:
        with self._lock:
            problems: List[QualityProblem] = []
            for report in self._entry(dataset_iri).reports:
                problems.extend(report.problems)
            return problems

    def dataset_iris(self) -> List[str]:
        with self._lock:
            return sorted(self._entries)
