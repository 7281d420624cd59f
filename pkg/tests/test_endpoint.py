"""Paged endpoint client against a scripted SPARQL mock."""

import re

import pytest

from ldqa.endpoint import Endpoint, TransportError, TruncationSuspected, fetch_endpoint_pages
from ldqa.terms import BlankNode, Iri, Literal, Triple


def binding(s_value, o_value, o_type="uri", lang=None, datatype=None):
    obj = {"type": o_type, "value": o_value}
    if lang:
        obj["xml:lang"] = lang
    if datatype:
        obj["datatype"] = datatype
    return {
        "s": {"type": "uri", "value": s_value},
        "p": {"type": "uri", "value": "http://e.example/p"},
        "o": obj,
    }


def make_rows(n):
    return [binding(f"http://e.example/s{i:05d}", f"http://e.example/o{i:05d}") for i in range(n)]


def test_paging_25_triples_page_10_three_requests(sparql_mock_server):
    server = sparql_mock_server
    server.rows = make_rows(25)
    endpoint = Endpoint(server.base_url, page_size=10, retries=1)
    triples = list(fetch_endpoint_pages(endpoint))
    assert len(triples) == 25
    assert len(set(triples)) == 25  # no duplicates
    assert len(server.request_log) == 3
    offsets = [int(re.search(r"OFFSET (\d+)", q).group(1)) for q in server.request_log]
    assert offsets == [0, 10, 20]
    assert all("ORDER BY ?s ?p ?o" in q for q in server.request_log)


def test_empty_endpoint_single_request(sparql_mock_server):
    server = sparql_mock_server
    endpoint = Endpoint(server.base_url, page_size=10, retries=1)
    triples = list(fetch_endpoint_pages(endpoint))
    assert triples == []
    assert len(server.request_log) == 1


def test_exact_multiple_of_page_size_issues_final_probe(sparql_mock_server):
    server = sparql_mock_server
    server.rows = make_rows(20)
    endpoint = Endpoint(server.base_url, page_size=10, retries=1)
    triples = list(fetch_endpoint_pages(endpoint))
    assert len(triples) == 20
    assert len(server.request_log) == 3  # last page is empty and terminates


def test_binding_kinds_convert_to_terms(sparql_mock_server):
    server = sparql_mock_server
    server.rows = [
        binding("http://e.example/s1", "http://e.example/o1"),
        binding("http://e.example/s2", "hello", o_type="literal", lang="en"),
        binding(
            "http://e.example/s3",
            "4.2",
            o_type="literal",
            datatype="http://www.w3.org/2001/XMLSchema#double",
        ),
        binding("http://e.example/s4", "b0", o_type="bnode"),
    ]
    endpoint = Endpoint(server.base_url, page_size=10, retries=1)
    triples = list(fetch_endpoint_pages(endpoint))
    assert triples[0].object == Iri("http://e.example/o1")
    assert triples[1].object == Literal("hello", None, "en")
    assert triples[2].object == Literal("4.2", "http://www.w3.org/2001/XMLSchema#double")
    assert triples[3].object == BlankNode("b0")


def test_page_size_cannot_exceed_truncation_limit():
    with pytest.raises(ValueError):
        Endpoint("http://example.org/sparql", page_size=20_000)
    with pytest.raises(ValueError):
        Endpoint("http://example.org/sparql", page_size=0)
    # the documented public-endpoint cap is the default guard
    assert Endpoint("http://example.org/sparql").truncation_limit == 10_000


def test_over_full_page_raises_truncation_suspected(sparql_mock_server):
    server = sparql_mock_server

    class Oversized(list):
        def __getitem__(self, item):
            if isinstance(item, slice):
                return make_rows(15)
            return super().__getitem__(item)

    server.rows = Oversized()
    endpoint = Endpoint(server.base_url, page_size=10, retries=1)
    with pytest.raises(TruncationSuspected):
        list(fetch_endpoint_pages(endpoint))


def test_retries_then_success(sparql_mock_server):
    server = sparql_mock_server
    server.rows = make_rows(5)
    server.fail_first = 2
    endpoint = Endpoint(server.base_url, page_size=10, retries=3, retry_base_delay=0.01)
    triples = list(fetch_endpoint_pages(endpoint))
    assert len(triples) == 5
    assert len(server.request_log) == 3


def test_transport_error_after_exhausted_retries(sparql_mock_server):
    server = sparql_mock_server
    server.rows = make_rows(5)
    server.fail_first = 5
    endpoint = Endpoint(server.base_url, page_size=10, retries=2, retry_base_delay=0.01)
    with pytest.raises(TransportError):
        list(fetch_endpoint_pages(endpoint))
