"""Shared fixtures: scriptable HTTP mock server, fake probers, fixture graphs."""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

import pytest

from ldqa.http_probe import HttpProbeResult


class MockHttpHandler(BaseHTTPRequestHandler):
    """Serves scripted routes: the owning server carries `routes` mapping
    path -> {"status": int, "location": str, "content_type": str, "body": bytes}
    and records every request in `server.request_log`."""

    def log_message(self, *args) -> None:
        pass

    def _serve(self, send_body: bool) -> None:
        url = urlsplit(self.path)
        with self.server.log_lock:
            self.server.request_log.append((self.command, url.path, url.query))
        route = self.server.routes.get(url.path)
        if route is None:
            self.send_response(404)
            self.send_header("Content-Length", "0")
            self.end_headers()
            return
        status = route.get("status", 200)
        body = route.get("body", b"")
        self.send_response(status)
        if "location" in route:
            self.send_header("Location", route["location"])
        if "content_type" in route:
            self.send_header("Content-Type", route["content_type"])
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        if send_body and body:
            self.wfile.write(body)

    def do_GET(self) -> None:
        self._serve(send_body=True)

    def do_HEAD(self) -> None:
        self._serve(send_body=False)


@pytest.fixture
def mock_http_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), MockHttpHandler)
    server.routes = {}
    server.request_log = []
    server.log_lock = threading.Lock()
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    server.base_url = f"http://127.0.0.1:{server.server_address[1]}"
    yield server
    server.shutdown()
    server.server_close()


class SparqlMockHandler(BaseHTTPRequestHandler):
    """SPARQL SELECT endpoint over `server.rows` (a sorted list of binding
    dicts); honours LIMIT/OFFSET from the query and an optional hard
    truncation cap; can fail the first `server.fail_first` requests."""

    def log_message(self, *args) -> None:
        pass

    def do_GET(self) -> None:
        url = urlsplit(self.path)
        params = parse_qs(url.query)
        query = params.get("query", [""])[0]
        with self.server.log_lock:
            self.server.request_log.append(query)
            if self.server.fail_first > 0:
                self.server.fail_first -= 1
                self.send_response(500)
                self.send_header("Content-Length", "0")
                self.end_headers()
                return
        match = re.search(r"LIMIT (\d+) OFFSET (\d+)", query)
        limit, offset = (int(match.group(1)), int(match.group(2))) if match else (10000, 0)
        limit = min(limit, self.server.hard_cap)
        rows = self.server.rows[offset:offset + limit]
        payload = json.dumps(
            {"head": {"vars": ["s", "p", "o"]}, "results": {"bindings": rows}}
        ).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/sparql-results+json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


@pytest.fixture
def sparql_mock_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), SparqlMockHandler)
    server.rows = []
    server.request_log = []
    server.fail_first = 0
    server.hard_cap = 10000
    server.log_lock = threading.Lock()
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    server.base_url = f"http://127.0.0.1:{server.server_address[1]}"
    yield server
    server.shutdown()
    server.server_close()


def fake_deref_prober(dereferenceable: set):
    """Scripted dereferenceability oracle: hash IRIs and listed IRIs pass."""

    def prober(iri: str):
        ok = "#" in iri or iri in dereferenceable
        return ok, HttpProbeResult(iri=iri, status_chain=[303, 200] if ok else [200], probed="#" not in iri)

    return prober


def fake_ct_prober(content_types: dict):
    """Scripted content-type oracle: iri -> (status, content_type)."""

    def prober(iri: str):
        status, content_type = content_types.get(iri, (404, None))
        return HttpProbeResult(iri=iri, status_chain=[status], content_type=content_type)

    return prober


@pytest.fixture
def deref_oracle():
    return fake_deref_prober
