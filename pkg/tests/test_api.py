"""HTTP API endpoints and their consistency with the CLI rank command."""

import json
import threading
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest
import requests

from ldqa.api import make_server
from ldqa.core.descriptors import load_taxonomy
from ldqa.metadata import (
    MetadataStore,
    Observation,
    QualityProblem,
    QualityReport,
    ResourceList,
    dataset_slug,
)

DEFAULT_TAXONOMY = Path(__file__).resolve().parents[1] / "src/ldqa/data/default_taxonomy.json"
SHORT_URIS = "http://purl.org/eis/vocab/dqm#ShortUris"
NO_COLLECTIONS = "http://purl.org/eis/vocab/dqm#NoRdfCollections"
BLANK_NODES = "http://purl.org/eis/vocab/dqm#LowBlankNodeUsage"

DATASETS = {
    "http://data.example/a": {SHORT_URIS: 0.9, NO_COLLECTIONS: 0.2, BLANK_NODES: 0.5},
    "http://data.example/b": {SHORT_URIS: 0.4, NO_COLLECTIONS: 1.0, BLANK_NODES: 0.6},
    "http://data.example/c": {SHORT_URIS: 0.4, NO_COLLECTIONS: 0.9, BLANK_NODES: 0.1},
}


@pytest.fixture
def seeded_store(tmp_path):
    store = MetadataStore(tmp_path / "store")
    t0 = datetime(2026, 4, 1, tzinfo=timezone.utc)
    for dataset, metrics in DATASETS.items():
        observations = [
            Observation(dataset, metric, value, t0) for metric, value in metrics.items()
        ]
        report = QualityReport.make(
            dataset,
            [
                QualityProblem(
                    SHORT_URIS,
                    ResourceList(tuple(f"{dataset}/bad/{i}" for i in range(250))),
                )
            ],
        )
        store.append_run(dataset, observations, report)
    return store


@pytest.fixture
def api(seeded_store):
    taxonomy = load_taxonomy(DEFAULT_TAXONOMY)
    server = make_server(seeded_store, taxonomy, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    yield base, seeded_store
    server.shutdown()
    server.server_close()


def test_list_datasets(api):
    base, _ = api
    payload = requests.get(f"{base}/api/datasets", timeout=5).json()
    assert [d["iri"] for d in payload["datasets"]] == sorted(DATASETS)
    assert all(d["metrics"] == 3 for d in payload["datasets"])
    assert all(d["problems"] == 250 for d in payload["datasets"])


def test_observations_endpoint(api):
    base, _ = api
    slug = dataset_slug("http://data.example/a")
    payload = requests.get(f"{base}/api/datasets/{slug}/observations", timeout=5).json()
    assert payload["dataset"] == "http://data.example/a"
    assert len(payload["observations"]) == 3
    by_metric = {row["metric"]: row["value"] for row in payload["observations"]}
    assert by_metric[SHORT_URIS] == 0.9
    assert all(row["label"] for row in payload["observations"])


def test_problems_pagination(api):
    base, _ = api
    slug = dataset_slug("http://data.example/b")
    first = requests.get(f"{base}/api/datasets/{slug}/problems", timeout=5).json()
    assert first["total"] == 250
    assert len(first["problems"]) == 100  # default page
    rest = requests.get(
        f"{base}/api/datasets/{slug}/problems", params={"offset": 200, "limit": 100}, timeout=5
    ).json()
    assert len(rest["problems"]) == 50
    assert rest["offset"] == 200


def test_taxonomy_endpoint(api):
    base, _ = api
    payload = requests.get(f"{base}/api/taxonomy", timeout=5).json()
    assert len(payload["categories"]) == 4
    metrics = [
        metric["iri"]
        for category in payload["categories"]
        for dimension in category["dimensions"]
        for metric in dimension["metrics"]
    ]
    assert len(metrics) == 16


def test_unknown_dataset_404(api):
    base, _ = api
    response = requests.get(f"{base}/api/datasets/nope/observations", timeout=5)
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "unknown-dataset"


def test_unknown_route_404(api):
    base, _ = api
    assert requests.get(f"{base}/api/whatever", timeout=5).status_code == 404


def test_rank_endpoint_matches_cli(api, tmp_path):
    base, store = api
    body = {"level": "metric", "weights": {SHORT_URIS: 1.0, NO_COLLECTIONS: 0.5}}
    api_payload = requests.post(f"{base}/api/rank", json=body, timeout=5).json()

    from ldqa.cli import main

    weights_file = tmp_path / "weights.json"
    weights_file.write_text(json.dumps(body))
    out_file = tmp_path / "ranking.json"
    code = main(
        [
            "rank",
            "--store",
            str(store.directory),
            "--weights",
            str(weights_file),
            "--taxonomy",
            str(DEFAULT_TAXONOMY),
            "--out",
            str(out_file),
        ]
    )
    assert code == 0
    cli_payload = json.loads(out_file.read_text())
    assert api_payload == cli_payload


def test_rank_negative_weight_422(api):
    base, _ = api
    response = requests.post(
        f"{base}/api/rank", json={"level": "metric", "weights": {SHORT_URIS: -1}}, timeout=5
    )
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "bad-weights"


def test_rank_unknown_target_422_and_bad_json_400(api):
    base, _ = api
    response = requests.post(
        f"{base}/api/rank", json={"level": "metric", "weights": {"urn:bogus": 1}}, timeout=5
    )
    assert response.status_code == 422
    response = requests.post(
        f"{base}/api/rank",
        data=b"{not json",
        headers={"Content-Type": "application/json"},
        timeout=5,
    )
    assert response.status_code == 400
    response = requests.post(
        f"{base}/api/rank", json={"level": "metric", "weights": {SHORT_URIS: "high"}}, timeout=5
    )
    assert response.status_code == 422


def test_rank_missing_observation_422(api):
    base, _ = api
    deref = "http://purl.org/eis/vocab/dqm#Dereferenceability"
    response = requests.post(
        f"{base}/api/rank", json={"level": "metric", "weights": {deref: 1.0}}, timeout=5
    )
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "unrankable"


def test_store_refresh_reflects_new_runs(api):
    base, store = api
    before = requests.get(f"{base}/api/datasets", timeout=5).json()
    assert len(before["datasets"]) == 3
    extra = "http://data.example/late"
    store.append_run(
        extra,
        [Observation(extra, SHORT_URIS, 0.5, datetime(2026, 5, 1, tzinfo=timezone.utc))],
    )
    after = requests.get(f"{base}/api/datasets", timeout=5).json()
    assert len(after["datasets"]) == 4


def test_static_ui_served_when_configured(seeded_store, tmp_path):
    ui = tmp_path / "ui"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>explorer</body></html>")
    taxonomy = load_taxonomy(DEFAULT_TAXONOMY)
    server = make_server(seeded_store, taxonomy, port=0, ui_dir=str(ui))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    try:
        response = requests.get(f"{base}/", timeout=5)
        assert response.status_code == 200
        assert "explorer" in response.text
        assert requests.get(f"{base}/nope.js", timeout=5).status_code == 404
    finally:
        server.shutdown()
        server.server_close()
