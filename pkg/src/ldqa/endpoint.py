"""Paged SPARQL endpoint client.

Pages a SELECT over ?s ?p ?o with a total ORDER BY so OFFSET windows are
stable; a page shorter than the requested size terminates the scan.
Public endpoints truncate large results (commonly at 10,000 rows), so the
page size is capped by a configurable truncation limit and a page larger
than requested raises immediately.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import requests

from ldqa.terms import BlankNode, Iri, Literal, RdfTerm, Triple
from ldqa.vocab import XSD_STRING

SELECT_TEMPLATE = (
    "SELECT ?s ?p ?o WHERE {{ ?s ?p ?o }} ORDER BY ?s ?p ?o LIMIT {limit} OFFSET {offset}"
)

DEFAULT_PAGE_SIZE = 5000
DEFAULT_TRUNCATION_LIMIT = 10000


class TransportError(RuntimeError):
    pass


class TruncationSuspected(RuntimeError):
    pass


@dataclass(frozen=True)
class Endpoint:
    url: str
    page_size: int = DEFAULT_PAGE_SIZE
    order_keys: Tuple[str, ...] = ("?s", "?p", "?o")
    truncation_limit: int = DEFAULT_TRUNCATION_LIMIT
    retries: int = 3
    retry_base_delay: float = 0.5
    timeout: float = 30.0

    def __post_init__(self) -> None:
        if self.page_size < 1:
            raise ValueError("page_size must be >= 1")
        if self.page_size > self.truncation_limit:
            raise ValueError(
                f"page_size {self.page_size} exceeds the endpoint truncation "
                f"limit {self.truncation_limit}"
            )


def _binding_to_term(binding: dict) -> RdfTerm:
    kind = binding.get("type")
    value = binding.get("value", "")
    if kind == "uri":
        return Iri(value)
    if kind == "bnode":
        return BlankNode(value)
    if kind in ("literal", "typed-literal"):
        datatype = binding.get("datatype")
        if datatype == XSD_STRING:
            datatype = None
        language = binding.get("xml:lang")
        return Literal(value, datatype, language)
    raise ValueError(f"unknown binding type {kind!r}")


def _fetch_page(
    endpoint: Endpoint, offset: int, session: requests.Session
) -> list[dict]:
    query = SELECT_TEMPLATE.format(limit=endpoint.page_size, offset=offset)
    last_error: Optional[Exception] = None
    for attempt in range(endpoint.retries):
        try:
            response = session.get(
                endpoint.url,
                params={"query": query},
                headers={"Accept": "application/sparql-results+json"},
                timeout=endpoint.timeout,
            )
            response.raise_for_status()
            payload = response.json()
            return payload["results"]["bindings"]
        except (requests.RequestException, ValueError, KeyError) as exc:
            last_error = exc
            if attempt + 1 < endpoint.retries:
                time.sleep(endpoint.retry_base_delay * (2 ** attempt))
    raise TransportError(
        f"endpoint {endpoint.url} failed after {endpoint.retries} attempts: {last_error}"
    ) from last_error


def fetch_endpoint_pages(
    endpoint: Endpoint, session: Optional[requests.Session] = None
) -> Iterator[Triple]:
    """Stream every statement of the endpoint's default graph exactly once."""
    own_session = session is None
    session = session or requests.Session()
    try:
        offset = 0
        while True:
            rows = _fetch_page(endpoint, offset, session)
            if len(rows) > endpoint.page_size:
                raise TruncationSuspected(
                    f"page at offset {offset} returned {len(rows)} rows for "
                    f"LIMIT {endpoint.page_size}"
                )
            for row in rows:
                try:
                    subject = _binding_to_term(row["s"])
                    predicate = _binding_to_term(row["p"])
                    object_ = _binding_to_term(row["o"])
                except (KeyError, ValueError):
                    continue
                if isinstance(subject, Literal) or not isinstance(predicate, Iri):
                    continue
                yield Triple(subject, predicate, object_)
            if len(rows) < endpoint.page_size:
                return
            offset += endpoint.page_size
    finally:
        if own_session:
            session.close()
