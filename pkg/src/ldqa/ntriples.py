"""Line-oriented N-Triples reader and writer.

Covers the subset used throughout: IRIs, blank nodes (``_:label``) and
literals with an optional ``^^<datatype>`` or ``@lang`` suffix. Malformed
lines are reported in-band as :class:`LineError` items so a dirty dump
never aborts an assessment run.
"""

from __future__ import annotations

import re
from typing import IO, Iterable, Iterator, NamedTuple, Union

from ldqa.terms import BlankNode, Iri, Literal, RdfTerm, Triple
from ldqa.vocab import XSD_STRING


class LineError(NamedTuple):
    line: int
    message: str


ParseEvent = Union[Triple, LineError]

_IRI = r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>'
_BNODE = r"_:([A-Za-z0-9_]+)"
_LITERAL = r'"((?:[^"\\\n\r]|\\.)*)"'
_LANG = r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)"

_TRIPLE_RE = re.compile(
    r"[ \t]*"
    rf"(?:{_IRI}|{_BNODE})"  # groups 1-2: subject
    r"[ \t]+"
    rf"{_IRI}"  # group 3: predicate
    r"[ \t]+"
    rf"(?:{_IRI}|{_BNODE}|{_LITERAL}(?:\^\^{_IRI}|{_LANG})?)"  # groups 4-8: object
    r"[ \t]*\.[ \t]*\Z"
)

_ECHAR_DECODE = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_ESCAPE_RE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.)|\Z)")


class _BadEscape(ValueError):
    pass


def _unescape(text: str) -> str:
    def repl(m: re.Match) -> str:
        if m.group(1):
            return chr(int(m.group(1), 16))
        if m.group(2):
            return chr(int(m.group(2), 16))
        ch = m.group(3)
        if ch is None or ch not in _ECHAR_DECODE:
            raise _BadEscape(f"invalid escape \\{ch or ''}")
        return _ECHAR_DECODE[ch]

    return _ESCAPE_RE.sub(repl, text)


_IRI_TEXT_FORBIDDEN = re.compile(r"[\x00-\x20<>]")


def _iri(raw: str, what: str) -> Iri:
    if "\\" in raw:
        raw = _unescape(raw)
    if not raw or _IRI_TEXT_FORBIDDEN.search(raw):
        raise _BadEscape(f"{what} IRI is empty or contains forbidden characters")
    return Iri(raw)


def parse_line(line: str) -> Triple:
    """Parse one N-Triples statement line; raises ValueError when malformed."""
    m = _TRIPLE_RE.match(line)
    if m is None:
        raise ValueError("not a valid N-Triples statement")
    (s_iri, s_bnode, p_iri, o_iri, o_bnode, o_lex, o_dt, o_lang) = m.groups()

    subject: RdfTerm = Iri("")
    if s_iri is not None:
        subject = _iri(s_iri, "subject")
    else:
        subject = BlankNode(s_bnode)

    predicate = _iri(p_iri, "predicate")

    if o_iri is not None:
        object: RdfTerm = _iri(o_iri, "object")
    elif o_bnode is not None:
        object = BlankNode(o_bnode)
    else:
        lexical = _unescape(o_lex) if "\\" in o_lex else o_lex
        datatype = None
        if o_dt is not None:
            datatype = _iri(o_dt, "datatype").text
            if datatype == XSD_STRING:
                datatype = None
        object = Literal(lexical, datatype, o_lang)
    return Triple(subject, predicate, object)


def parse_ntriples(lines: Union[IO[bytes], Iterable[bytes]]) -> Iterator[ParseEvent]:
    """Stream triples from UTF-8 N-Triples byte lines.

    Well-formed statement lines yield a :class:`Triple`; blank lines and
    ``#`` comment lines yield nothing; anything else yields a
    :class:`LineError` carrying the 1-based line number and the stream
    continues.
    """
    for lineno, raw in enumerate(lines, 1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError:
            yield LineError(lineno, "invalid UTF-8")
            continue
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield parse_line(stripped)
        except (ValueError, _BadEscape) as exc:
            yield LineError(lineno, str(exc))


def parse_ntriples_text(text: str) -> Iterator[ParseEvent]:
    """Convenience wrapper for in-memory sources."""
    return parse_ntriples(line.encode("utf-8") for line in text.split("\n"))


_ECHAR_ENCODE = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}

_NEEDS_ESCAPE = re.compile(r'[\\"\n\r\t\b\f]')


def _escape_lexical(text: str) -> str:
    return _NEEDS_ESCAPE.sub(lambda m: _ECHAR_ENCODE[m.group(0)], text)


def format_term(term: RdfTerm) -> str:
    if isinstance(term, Iri):
        return f"<{term.text}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    out = f'"{_escape_lexical(term.lexical)}"'
    if term.language is not None:
        return f"{out}@{term.language}"
    if term.datatype is not None and term.datatype != XSD_STRING:
        return f"{out}^^<{term.datatype}>"
    return out


def format_triple(triple: Triple) -> str:
    return (
        f"{format_term(triple.subject)} {format_term(triple.predicate)} "
        f"{format_term(triple.object)} ."
    )


def format_document(triples: Iterable[Triple]) -> str:
    """Serialize triples canonically: lexicographic line order, one per line."""
    lines = sorted(format_triple(t) for t in triples)
    return "\n".join(lines) + ("\n" if lines else "")
