"""Parser and serializer tests; expected terms hand-checked against the
W3C N-Triples grammar."""

import io

import pytest

from ldqa.ntriples import (
    LineError,
    format_document,
    format_triple,
    parse_line,
    parse_ntriples,
    parse_ntriples_text,
)
from ldqa.terms import BlankNode, Iri, Literal, TermError, Triple, make_literal, make_triple


def events(text: str):
    return list(parse_ntriples_text(text))


def triples(text: str):
    return [e for e in events(text) if isinstance(e, Triple)]


def errors(text: str):
    return [e for e in events(text) if isinstance(e, LineError)]


def test_empty_input_yields_nothing():
    assert events("") == []
    assert list(parse_ntriples(io.BytesIO(b""))) == []


def test_language_tagged_literal():
    # hand-derived: IRIREF, IRIREF, STRING_LITERAL_QUOTE LANGTAG '.'
    got = triples('<http://a> <http://p> "x"@en .')
    assert got == [Triple(Iri("http://a"), Iri("http://p"), Literal("x", None, "en"))]


def test_missing_object_is_line_error():
    got = events("<http://a> <http://p> .")
    assert got == [LineError(1, "not a valid N-Triples statement")]


def test_comments_and_blank_lines_skipped():
    text = "# header\n\n   \n<http://a> <http://p> <http://b> .\n  # trailing comment line\n"
    got = events(text)
    assert got == [Triple(Iri("http://a"), Iri("http://p"), Iri("http://b"))]


def test_blank_nodes_both_positions():
    got = triples("_:x1 <http://p> _:y2 .")
    assert got == [Triple(BlankNode("x1"), Iri("http://p"), BlankNode("y2"))]


def test_typed_literal_and_xsd_string_normalisation():
    doc = (
        '<http://a> <http://p> "3.5"^^<http://www.w3.org/2001/XMLSchema#double> .\n'
        '<http://a> <http://p> "x"^^<http://www.w3.org/2001/XMLSchema#string> .\n'
        '<http://a> <http://p> "y" .'
    )
    got = triples(doc)
    assert got[0].object == Literal("3.5", "http://www.w3.org/2001/XMLSchema#double")
    assert got[1].object == Literal("x")  # explicit xsd:string drops to plain
    assert got[2].object == Literal("y")


def test_escape_sequences_round_trip():
    line = '<http://a> <http://p> "tab\\there \\"quoted\\" \\\\ \\u00e9" .'
    (triple,) = triples(line)
    assert triple.object.lexical == 'tab\there "quoted" \\ é'
    reparsed = triples(format_triple(triple))
    assert reparsed == [triple]


def test_invalid_escape_is_line_error():
    assert len(errors('<http://a> <http://p> "bad \\q" .')) == 1


def test_iri_uchar_unescaped_and_validated():
    (triple,) = triples('<http://u/\\u0041> <http://p> "A" .')
    assert triple.subject == Iri("http://u/A")
    # a UCHAR escape that decodes to whitespace violates the IRI rules
    assert len(errors('<http://u/\\u0020x> <http://p> "A" .')) == 1


def test_malformed_lines_are_skipped_not_fatal():
    text = "\n".join(
        [
            "<http://a> <http://p> <http://b> .",
            "garbage line",
            '<http://a> <http://p> "ok" .',
            "<http://a> <http://p> <http://b>",  # missing dot
            "_:bad-label <http://p> <http://b> .",  # '-' not in the label set
        ]
    )
    got = events(text)
    assert len([e for e in got if isinstance(e, Triple)]) == 2
    bad = [e for e in got if isinstance(e, LineError)]
    assert [e.line for e in bad] == [2, 4, 5]


def test_error_lines_are_one_based_and_stream_continues():
    text = "bad\n<http://a> <http://p> <http://b> ."
    got = events(text)
    assert got[0] == LineError(1, "not a valid N-Triples statement")
    assert isinstance(got[1], Triple)


def test_invalid_utf8_line():
    got = list(parse_ntriples(iter([b"<http://a> <http://p> \xff ."])))
    assert got == [LineError(1, "invalid UTF-8")]


def test_parse_robustness_counts():
    # k malformed lines inside n valid lines: exactly n triples, k errors
    valid = [f"<http://a/{i}> <http://p> <http://b/{i}> ." for i in range(50)]
    lines = []
    for i, line in enumerate(valid):
        lines.append(line)
        if i % 5 == 0:
            lines.append(f"malformed {i}")
    got = events("\n".join(lines))
    assert len([e for e in got if isinstance(e, Triple)]) == 50
    assert len([e for e in got if isinstance(e, LineError)]) == 10


def test_format_document_is_sorted_and_stable():
    doc = triples(
        '<http://b> <http://p> "2" .\n<http://a> <http://p> "1" .'
    )
    rendered = format_document(doc)
    assert rendered.splitlines() == sorted(rendered.splitlines())
    assert format_document(triples(rendered)) == rendered


def test_term_invariants():
    with pytest.raises(TermError):
        make_literal("x", datatype="http://dt", language="en")
    with pytest.raises(TermError):
        make_triple(Literal("no"), Iri("http://p"), Literal("x"))
    with pytest.raises(TermError):
        make_triple(Iri("http://a"), BlankNode("b"), Literal("x"))


def test_parse_line_rejects_trailing_garbage():
    with pytest.raises(ValueError):
        parse_line('<http://a> <http://p> "x" . extra')
