"""Read-only HTTP API over a metadata store, plus the stateless /api/rank.

Built on the standard library server: every worker thread reads an
immutable snapshot of the store, which is reloaded when the underlying
files change. The ranking UI consumes exactly these endpoints.
"""

from __future__ import annotations

import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlsplit

from ldqa.core.descriptors import Taxonomy
from ldqa.metadata.model import ResourceList
from ldqa.metadata.store import MetadataStore, UnknownDataset, dataset_slug
from ldqa.ntriples import format_triple
from ldqa.ranking import (
    EmptyCategory,
    EmptyDimension,
    InvalidWeightTarget,
    MissingObservation,
    NegativeWeight,
    WeightConfig,
    rank_datasets,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def taxonomy_to_dict(taxonomy: Taxonomy) -> dict:
    return {
        "categories": [
            {
                "iri": category,
                "dimensions": [
                    {
                        "iri": dimension,
                        "metrics": [
                            {
                                "iri": metric,
                                "label": taxonomy.descriptors[metric].label,
                                "kind": taxonomy.descriptors[metric].value_kind,
                                "normalized": taxonomy.descriptors[metric].normalized,
                            }
                            for metric in taxonomy.dimensions[dimension]
                        ],
                    }
                    for dimension in taxonomy.categories[category]
                ],
            }
            for category in sorted(taxonomy.categories)
        ]
    }


class _Handler(BaseHTTPRequestHandler):
    server_version = "ldqa-api/0.1"
    store: MetadataStore
    taxonomy: Taxonomy
    ui_dir: Optional[Path]

    # -- plumbing -----------------------------------------------------------

    def log_message(self, format: str, *args) -> None:  # quiet by default
        pass

    def _send_json(self, payload: dict, status: int = 200) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, error: ApiError) -> None:
        self._send_json(
            {"error": {"code": error.code, "message": error.message}}, status=error.status
        )

    def _dataset_iri(self, slug: str) -> str:
        try:
            return self.store.dataset_by_slug(slug)
        except UnknownDataset:
            raise ApiError(404, "unknown-dataset", f"no dataset with slug {slug!r}")

    # -- routes -------------------------------------------------------------

    def do_GET(self) -> None:
        url = urlsplit(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts and parts[0] == "api":
                self.store.refresh_if_changed()
                if parts == ["api", "datasets"]:
                    return self._send_json(self._datasets())
                if len(parts) == 4 and parts[1] == "datasets" and parts[3] == "observations":
                    return self._send_json(self._observations(parts[2]))
                if len(parts) == 4 and parts[1] == "datasets" and parts[3] == "problems":
                    return self._send_json(self._problems(parts[2], parse_qs(url.query)))
                if parts == ["api", "taxonomy"]:
                    return self._send_json(taxonomy_to_dict(self.taxonomy))
                raise ApiError(404, "unknown-route", f"no such endpoint: {url.path}")
            return self._static(url.path)
        except ApiError as error:
            self._send_error_json(error)
        except Exception as exc:  # pragma: no cover - defensive
            self._send_error_json(ApiError(500, "internal", str(exc)))

    def do_POST(self) -> None:
        url = urlsplit(self.path)
        try:
            if url.path != "/api/rank":
                raise ApiError(404, "unknown-route", f"no such endpoint: {url.path}")
            self.store.refresh_if_changed()
            return self._send_json(self._rank())
        except ApiError as error:
            self._send_error_json(error)
        except Exception as exc:  # pragma: no cover - defensive
            self._send_error_json(ApiError(500, "internal", str(exc)))

    # -- handlers -----------------------------------------------------------

    def _datasets(self) -> dict:
        datasets = []
        for slug, iri in self.store.datasets():
            datasets.append(
                {
                    "slug": slug,
                    "iri": iri,
                    "metrics": len(self.store.latest_values(iri)),
                    "problems": sum(
                        _problem_size(p) for p in self.store.problems_for(iri)
                    ),
                }
            )
        return {"datasets": datasets}

    def _observations(self, slug: str) -> dict:
        iri = self._dataset_iri(slug)
        history = self.store.observations_for(iri)
        latest: dict = {}
        for observation in history:
            current = latest.get(observation.metric_iri)
            if current is None or observation.observed_at > current.observed_at:
                latest[observation.metric_iri] = observation
        rows = []
        for metric_iri in sorted(latest):
            observation = latest[metric_iri]
            descriptor = self.taxonomy.descriptors.get(metric_iri)
            rows.append(
                {
                    "metric": metric_iri,
                    "label": descriptor.label if descriptor else metric_iri,
                    "value": observation.value,
                    "observed_at": observation.observed_at.isoformat(),
                }
            )
        return {"dataset": iri, "slug": slug, "observations": rows, "history": len(history)}

    def _problems(self, slug: str, query: dict) -> dict:
        iri = self._dataset_iri(slug)
        offset = _int_param(query, "offset", 0)
        limit = _int_param(query, "limit", 100)
        rows = []
        for problem in self.store.problems_for(iri):
            thing = problem.problematic_thing
            if isinstance(thing, ResourceList):
                for resource in thing.resources:
                    rows.append(
                        {"metric": problem.described_by, "kind": "resource", "item": resource}
                    )
            else:
                for statement in thing.statements:
                    rows.append(
                        {
                            "metric": problem.described_by,
                            "kind": "statement",
                            "item": format_triple(statement),
                        }
                    )
        return {
            "dataset": iri,
            "slug": slug,
            "total": len(rows),
            "offset": offset,
            "limit": limit,
            "problems": rows[offset:offset + limit],
        }

    def _rank(self) -> dict:
        from ldqa.cli import ranked_result_to_dict

        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            body = json.loads(raw.decode("utf-8")) if raw else {}
        except (UnicodeDecodeError, json.JSONDecodeError):
            raise ApiError(400, "bad-json", "request body is not valid JSON")
        if not isinstance(body, dict):
            raise ApiError(400, "bad-json", "request body must be a JSON object")
        weights = body.get("weights", {})
        if not isinstance(weights, dict) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in weights.values()
        ):
            raise ApiError(422, "bad-weights", "weights must map IRIs to numbers")
        try:
            config = WeightConfig(level=body.get("level", "metric"), weights=dict(weights))
            result = rank_datasets(self.store, config, self.taxonomy)
        except (InvalidWeightTarget, NegativeWeight) as exc:
            raise ApiError(422, "bad-weights", str(exc))
        except (MissingObservation, EmptyDimension, EmptyCategory) as exc:
            raise ApiError(422, "unrankable", str(exc))
        return ranked_result_to_dict(result)

    # -- static assets ------------------------------------------------------

    def _static(self, path: str) -> None:
        if self.ui_dir is None:
            raise ApiError(404, "no-ui", "no static UI configured")
        relative = path.lstrip("/") or "index.html"
        target = (self.ui_dir / relative).resolve()
        if not str(target).startswith(str(self.ui_dir.resolve())) or not target.is_file():
            raise ApiError(404, "not-found", f"no such file: {path}")
        content = target.read_bytes()
        mime = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", mime)
        self.send_header("Content-Length", str(len(content)))
        self.end_headers()
        self.wfile.write(content)


def _problem_size(problem) -> int:
    thing = problem.problematic_thing
    if isinstance(thing, ResourceList):
        return len(thing.resources)
    return len(thing.statements)


def _int_param(query: dict, name: str, default: int) -> int:
    values = query.get(name)
    if not values:
        return default
    try:
        value = int(values[0])
    except ValueError:
        raise ApiError(400, "bad-parameter", f"{name} must be an integer")
    if value < 0:
        raise ApiError(400, "bad-parameter", f"{name} must be non-negative")
    return value


def make_server(
    store: MetadataStore,
    taxonomy: Taxonomy,
    host: str = "127.0.0.1",
    port: int = 0,
    ui_dir: Optional[str] = None,
) -> ThreadingHTTPServer:
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "store": store,
            "taxonomy": taxonomy,
            "ui_dir": Path(ui_dir) if ui_dir else None,
        },
    )
    return ThreadingHTTPServer((host, port), handler)
