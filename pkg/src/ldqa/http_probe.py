"""HTTP probes for dereferenceability and content-type checks.

Probes follow redirects hop by hop so the full status chain is observable
(a 303 anywhere in the chain marks a resource dereferenceable). Results
are memoised per run: the dereferenceability of a fixed IRI does not
change within one assessment, so each IRI costs at most one probe.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple
from urllib.parse import urljoin, urlsplit

import requests

USER_AGENT = "ldqa-quality-probe/0.1 (data quality assessment)"

RDF_MEDIA_TYPES = frozenset(
    {
        "application/rdf+xml",
        "text/turtle",
        "application/n-triples",
        "application/ld+json",
    }
)


@dataclass
class HttpProbeResult:
    iri: str
    status_chain: List[int] = field(default_factory=list)
    content_type: Optional[str] = None
    elapsed_ms: float = 0.0
    probed: bool = True
    failure: Optional[str] = None


class HttpClient:
    """requests-backed prober that walks redirect chains without auto-follow."""

    def __init__(
        self,
        timeout: float = 10.0,
        max_redirects: int = 10,
        session: Optional[requests.Session] = None,
    ):
        self.timeout = timeout
        self.max_redirects = max_redirects
        self._session = session or requests.Session()

    def probe(self, iri: str, accept: Optional[str] = None, method: str = "HEAD") -> HttpProbeResult:
        headers = {"User-Agent": USER_AGENT}
        if accept:
            headers["Accept"] = accept
        result = HttpProbeResult(iri=iri)
        url = iri.split("#", 1)[0]
        started = time.monotonic()
        try:
            for _ in range(self.max_redirects + 1):
                response = self._session.request(
                    method, url, headers=headers, timeout=self.timeout, allow_redirects=False
                )
                if response.status_code == 405 and method == "HEAD":
                    method = "GET"
                    continue
                result.status_chain.append(response.status_code)
                if 300 <= response.status_code < 400 and "Location" in response.headers:
                    url = urljoin(url, response.headers["Location"])
                    continue
                content_type = response.headers.get("Content-Type")
                if content_type:
                    result.content_type = content_type.split(";")[0].strip().lower()
                break
            else:
                result.failure = "too-many-redirects"
        except requests.Timeout:
            result.failure = "timeout"
        except requests.RequestException as exc:
            result.failure = f"connection-error: {exc.__class__.__name__}"
        result.elapsed_ms = (time.monotonic() - started) * 1000.0
        return result


def is_hash_iri(iri: str) -> bool:
    return bool(urlsplit(iri).fragment)


def probe_dereferenceability(iri: str, http: HttpClient) -> Tuple[bool, HttpProbeResult]:
    """A resource dereferences if its IRI is a hash IRI or a probe sees a 303."""
    if is_hash_iri(iri):
        return True, HttpProbeResult(iri=iri, probed=False)
    result = http.probe(iri)
    return 303 in result.status_chain, result


def probe_content_type(iri: str, http: HttpClient) -> HttpProbeResult:
    """GET with RDF content negotiation; records the final media type."""
    return http.probe(iri, accept="application/rdf+xml", method="GET")


class ProbeCache:
    """Thread-safe per-run memo so each IRI is probed at most once."""

    def __init__(self) -> None:
        self._entries: Dict[Tuple[str, str], object] = {}
        self._lock = threading.Lock()

    def get_or_probe(self, kind: str, iri: str, probe: Callable[[str], object]) -> object:
        key = (kind, iri)
        with self._lock:
            if key in self._entries:
                return self._entries[key]
        value = probe(iri)
        with self._lock:
            return self._entries.setdefault(key, value)


DerefProber = Callable[[str], Tuple[bool, HttpProbeResult]]
ContentTypeProber = Callable[[str], HttpProbeResult]


def cached_probers(
    http: Optional[HttpClient] = None, cache: Optional[ProbeCache] = None
) -> Tuple[DerefProber, ContentTypeProber]:
    """Build the pair of memoised probers an assessment run shares."""
    client = http or HttpClient()
    memo = cache or ProbeCache()

    def deref(iri: str) -> Tuple[bool, HttpProbeResult]:
        return memo.get_or_probe("deref", iri, lambda i: probe_dereferenceability(i, client))

    def content_type(iri: str) -> HttpProbeResult:
        return memo.get_or_probe("ct", iri, lambda i: probe_content_type(i, client))

    return deref, content_type
