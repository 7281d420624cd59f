"""Streaming quality assessment and user-weighted ranking for Linked Data.

The package assesses RDF datasets (N-Triples dumps or paged SPARQL
endpoints) against a configurable library of quality metrics, stores the
results as RDF quality metadata with machine-readable problem reports, and
ranks datasets by user-chosen weights on metrics, dimensions or categories.
"""

from ldqa.terms import BlankNode, Iri, Literal, Triple

__all__ = ["Iri", "BlankNode", "Literal", "Triple"]

__version__ = "0.1.0"
