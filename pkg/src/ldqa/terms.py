"""RDF terms and triples: the unit of data flowing through the pipeline.

Terms are plain named tuples so the parser can build millions of them
cheaply; they hash and compare structurally, which the distinct-term
accumulators in the metric library rely on.
"""

from __future__ import annotations

import re
from typing import NamedTuple, Optional, Union

from ldqa.vocab import XSD_STRING

_BNODE_LABEL = re.compile(r"[A-Za-z0-9_]+\Z")
_IRI_FORBIDDEN = re.compile(r"[\x00-\x20<>\"{}|^`\\]")


class Iri(NamedTuple):
    text: str

    def __str__(self) -> str:
        return f"<{self.text}>"


class BlankNode(NamedTuple):
    label: str

    def __str__(self) -> str:
        return f"_:{self.label}"


class Literal(NamedTuple):
    lexical: str
    datatype: Optional[str] = None
    language: Optional[str] = None


RdfTerm = Union[Iri, BlankNode, Literal]


class Triple(NamedTuple):
    subject: RdfTerm
    predicate: Iri
    object: RdfTerm


class TermError(ValueError):
    """A term violates the structural rules for its kind."""


def make_iri(text: str) -> Iri:
    """Build an Iri, rejecting empty text and structural characters."""
    if not text or _IRI_FORBIDDEN.search(text):
        raise TermError(f"invalid IRI text: {text!r}")
    return Iri(text)


def make_blank(label: str) -> BlankNode:
    if not _BNODE_LABEL.match(label):
        raise TermError(f"invalid blank node label: {label!r}")
    return BlankNode(label)


def make_literal(
    lexical: str, datatype: Optional[str] = None, language: Optional[str] = None
) -> Literal:
    """Build a Literal; a plain literal is normalised to datatype=None.

    Datatype and language are mutually exclusive; an explicit xsd:string
    datatype is dropped so equal literals compare equal regardless of which
    surface form they were parsed from.
    """
    if datatype is not None and language is not None:
        raise TermError("literal cannot carry both a datatype and a language tag")
    if datatype == XSD_STRING:
        datatype = None
    return Literal(lexical, datatype, language)


def resource_id(term: RdfTerm) -> str:
    """IRI-shaped identifier for a resource term in problem reports;
    blank nodes get a stable urn so reports stay valid RDF."""
    if isinstance(term, Iri):
        return term.text
    if isinstance(term, BlankNode):
        return f"urn:ldqa:bnode:{term.label}"
    raise TermError("literals cannot be problem resources")


def make_triple(subject: RdfTerm, predicate: RdfTerm, object: RdfTerm) -> Triple:
    """Build a Triple, enforcing the positional term-kind rules."""
    if isinstance(subject, Literal):
        raise TermError("triple subject cannot be a literal")
    if not isinstance(predicate, Iri):
        raise TermError("triple predicate must be an IRI")
    return Triple(subject, predicate, object)
