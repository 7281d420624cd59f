"""Emit and re-read quality metadata as N-Triples documents.

Node IRIs are content-addressed (urn:ldqa:...) so re-emitting parsed
metadata reproduces the same document byte for byte under the canonical
line ordering.
"""

from __future__ import annotations

import hashlib
import logging
from datetime import datetime, timezone
from typing import Dict, Iterable, List, Optional, Tuple, Union

from ldqa import vocab
from ldqa.metadata.model import (
    MalformedMetadata,
    Observation,
    QualityProblem,
    QualityReport,
    ReifiedStatements,
    ResourceList,
)
from ldqa.ntriples import format_document, parse_ntriples_text
from ldqa.terms import BlankNode, Iri, Literal, RdfTerm, Triple

logger = logging.getLogger(__name__)

DAQ_OBSERVATION = vocab.DAQ + "Observation"
DAQ_COMPUTED_ON = vocab.DAQ + "computedOn"
DAQ_METRIC = vocab.DAQ + "metric"
DAQ_VALUE = vocab.DAQ + "value"
DAQ_OBSERVED_AT = vocab.DAQ + "observedAt"
DAQ_IN_GRAPH = vocab.DAQ + "inGraph"

QPRO_REPORT = vocab.QPRO + "QualityReport"
QPRO_PROBLEM = vocab.QPRO + "QualityProblem"
QPRO_COMPUTED_ON = vocab.QPRO + "computedOn"
QPRO_HAS_PROBLEM = vocab.QPRO + "hasProblem"
QPRO_IS_DESCRIBED_BY = vocab.QPRO + "isDescribedBy"
QPRO_PROBLEMATIC_THING = vocab.QPRO + "problematicThing"
QPRO_IN_GRAPH = vocab.QPRO + "inGraph"

_KNOWN_PREDICATES = {
    vocab.RDF_TYPE,
    DAQ_COMPUTED_ON,
    DAQ_METRIC,
    DAQ_VALUE,
    DAQ_OBSERVED_AT,
    DAQ_IN_GRAPH,
    QPRO_COMPUTED_ON,
    QPRO_HAS_PROBLEM,
    QPRO_IS_DESCRIBED_BY,
    QPRO_PROBLEMATIC_THING,
    QPRO_IN_GRAPH,
    vocab.RDF_SUBJECT,
    vocab.RDF_PREDICATE,
    vocab.RDF_OBJECT,
}


def _digest(*parts: str) -> str:
    joined = "\x1f".join(parts)
    return hashlib.sha1(joined.encode("utf-8")).hexdigest()[:16]


def format_timestamp(moment: datetime) -> str:
    return moment.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%f") + "Z"


def parse_timestamp(lexical: str) -> datetime:
    text = lexical.rstrip("Z")
    for fmt in ("%Y-%m-%dT%H:%M:%S.%f", "%Y-%m-%dT%H:%M:%S"):
        try:
            return datetime.strptime(text, fmt).replace(tzinfo=timezone.utc)
        except ValueError:
            continue
    raise MalformedMetadata(f"unparseable xsd:dateTime {lexical!r}")


def _value_literal(value: Union[float, bool, int]) -> Literal:
    if isinstance(value, bool):
        return Literal("true" if value else "false", vocab.XSD_BOOLEAN)
    if isinstance(value, int):
        return Literal(str(value), vocab.XSD_INTEGER)
    return Literal(repr(float(value)), vocab.XSD_DOUBLE)


def _parse_value(literal: Literal) -> Union[float, bool, int]:
    if literal.datatype == vocab.XSD_BOOLEAN:
        return literal.lexical == "true"
    if literal.datatype == vocab.XSD_INTEGER:
        return int(literal.lexical)
    if literal.datatype == vocab.XSD_DOUBLE:
        return float(literal.lexical)
    raise MalformedMetadata(f"observation value has unsupported datatype {literal.datatype!r}")


def observation_node(observation: Observation) -> str:
    return "urn:ldqa:observation:" + _digest(
        observation.dataset_iri,
        observation.metric_iri,
        format_timestamp(observation.observed_at),
    )


def observation_triples(observation: Observation) -> List[Triple]:
    node = Iri(observation_node(observation))
    triples = [
        Triple(node, Iri(vocab.RDF_TYPE), Iri(DAQ_OBSERVATION)),
        Triple(node, Iri(DAQ_COMPUTED_ON), Iri(observation.dataset_iri)),
        Triple(node, Iri(DAQ_METRIC), Iri(observation.metric_iri)),
        Triple(node, Iri(DAQ_VALUE), _value_literal(observation.value)),
        Triple(
            node,
            Iri(DAQ_OBSERVED_AT),
            Literal(format_timestamp(observation.observed_at), vocab.XSD_DATETIME),
        ),
    ]
    if observation.graph_iri:
        triples.append(Triple(node, Iri(DAQ_IN_GRAPH), Iri(observation.graph_iri)))
    return triples


def emit_observations(observations: Iterable[Observation]) -> str:
    triples: List[Triple] = []
    for observation in observations:
        triples.extend(observation_triples(observation))
    return format_document(triples)


def _problem_node(problem: QualityProblem) -> str:
    return "urn:ldqa:problem:" + _digest(problem.canonical())


def report_triples(report: QualityReport) -> List[Triple]:
    node = Iri("urn:ldqa:report:" + _digest(report.computed_on, *(p.canonical() for p in report.problems)))
    triples = [
        Triple(node, Iri(vocab.RDF_TYPE), Iri(QPRO_REPORT)),
        Triple(node, Iri(QPRO_COMPUTED_ON), Iri(report.computed_on)),
    ]
    for problem in report.problems:
        problem_iri = _problem_node(problem)
        problem_node = Iri(problem_iri)
        seq_node = Iri(problem_iri + ":things")
        triples.append(Triple(node, Iri(QPRO_HAS_PROBLEM), problem_node))
        triples.append(Triple(problem_node, Iri(vocab.RDF_TYPE), Iri(QPRO_PROBLEM)))
        triples.append(Triple(problem_node, Iri(QPRO_IS_DESCRIBED_BY), Iri(problem.described_by)))
        triples.append(Triple(problem_node, Iri(QPRO_PROBLEMATIC_THING), seq_node))
        if problem.in_graph:
            triples.append(Triple(problem_node, Iri(QPRO_IN_GRAPH), Iri(problem.in_graph)))
        triples.append(Triple(seq_node, Iri(vocab.RDF_TYPE), Iri(vocab.RDF_SEQ)))
        thing = problem.problematic_thing
        if isinstance(thing, ResourceList):
            for i, resource in enumerate(thing.resources, 1):
                triples.append(Triple(seq_node, Iri(vocab.RDF + f"_{i}"), Iri(resource)))
        else:
            for i, statement in enumerate(thing.statements, 1):
                stmt_node = Iri(f"{problem_iri}:stmt{i}")
                triples.append(Triple(seq_node, Iri(vocab.RDF + f"_{i}"), stmt_node))
                triples.append(Triple(stmt_node, Iri(vocab.RDF_TYPE), Iri(vocab.RDF_STATEMENT)))
                triples.append(Triple(stmt_node, Iri(vocab.RDF_SUBJECT), statement.subject))
                triples.append(Triple(stmt_node, Iri(vocab.RDF_PREDICATE), statement.predicate))
                triples.append(Triple(stmt_node, Iri(vocab.RDF_OBJECT), statement.object))
    return triples


def emit_report(report: QualityReport) -> str:
    return format_document(report_triples(report))


class _NodeIndex:
    def __init__(self) -> None:
        self.by_subject: Dict[RdfTerm, Dict[str, List[RdfTerm]]] = {}

    def add(self, triple: Triple) -> None:
        self.by_subject.setdefault(triple.subject, {}).setdefault(
            triple.predicate.text, []
        ).append(triple.object)

    def one(self, subject: RdfTerm, predicate: str) -> Optional[RdfTerm]:
        values = self.by_subject.get(subject, {}).get(predicate)
        return values[0] if values else None

    def all(self, subject: RdfTerm, predicate: str) -> List[RdfTerm]:
        return self.by_subject.get(subject, {}).get(predicate, [])

    def of_type(self, type_iri: str) -> List[RdfTerm]:
        return [
            subject
            for subject, props in self.by_subject.items()
            if any(
                isinstance(o, Iri) and o.text == type_iri
                for o in props.get(vocab.RDF_TYPE, [])
            )
        ]


def _require_iri(term: Optional[RdfTerm], what: str) -> str:
    if not isinstance(term, Iri):
        raise MalformedMetadata(f"{what} missing or not an IRI")
    return term.text


def _seq_members(index: _NodeIndex, seq: RdfTerm) -> List[Tuple[int, RdfTerm]]:
    members = []
    for predicate, objects in index.by_subject.get(seq, {}).items():
        if predicate.startswith(vocab.RDF + "_"):
            try:
                position = int(predicate[len(vocab.RDF) + 1:])
            except ValueError:
                continue
            for obj in objects:
                members.append((position, obj))
    return sorted(members, key=lambda pair: pair[0])


def _parse_problem(index: _NodeIndex, node: RdfTerm) -> QualityProblem:
    described_by = _require_iri(index.one(node, QPRO_IS_DESCRIBED_BY), "qpro:isDescribedBy")
    seq = index.one(node, QPRO_PROBLEMATIC_THING)
    if seq is None:
        raise MalformedMetadata("problem has no qpro:problematicThing")
    graph = index.one(node, QPRO_IN_GRAPH)
    in_graph = graph.text if isinstance(graph, Iri) else None
    members = _seq_members(index, seq)
    if not members:
        raise MalformedMetadata("problematicThing sequence is empty")
    statements: List[Triple] = []
    resources: List[str] = []
    for _, member in members:
        types = index.all(member, vocab.RDF_TYPE)
        if any(isinstance(t, Iri) and t.text == vocab.RDF_STATEMENT for t in types):
            subject = index.one(member, vocab.RDF_SUBJECT)
            predicate = index.one(member, vocab.RDF_PREDICATE)
            object_ = index.one(member, vocab.RDF_OBJECT)
            if subject is None or not isinstance(predicate, Iri) or object_ is None:
                raise MalformedMetadata("incomplete reified statement")
            statements.append(Triple(subject, predicate, object_))
        else:
            resources.append(_require_iri(member, "problem resource"))
    if statements and resources:
        raise MalformedMetadata("problem mixes resources and reified statements")
    thing = (
        ReifiedStatements(tuple(statements)) if statements else ResourceList(tuple(resources))
    )
    return QualityProblem(described_by, thing, in_graph)


def parse_metadata(document: str) -> Tuple[List[Observation], List[QualityReport]]:
    """Inverse of the emitters; unknown predicates are ignored with a warning."""
    index = _NodeIndex()
    seen: set = set()  # RDF set semantics: appended documents repeat triples
    for event in parse_ntriples_text(document):
        if isinstance(event, Triple):
            if event.predicate.text not in _KNOWN_PREDICATES and not event.predicate.text.startswith(
                vocab.RDF + "_"
            ):
                logger.warning("ignoring unknown metadata predicate %s", event.predicate.text)
                continue
            if event in seen:
                continue
            seen.add(event)
            index.add(event)
        else:
            raise MalformedMetadata(f"line {event.line}: {event.message}")

    observations: List[Observation] = []
    for node in index.of_type(DAQ_OBSERVATION):
        dataset = _require_iri(index.one(node, DAQ_COMPUTED_ON), "daq:computedOn")
        metric = _require_iri(index.one(node, DAQ_METRIC), "daq:metric")
        value_term = index.one(node, DAQ_VALUE)
        if not isinstance(value_term, Literal):
            raise MalformedMetadata("observation is missing its daq:value literal")
        stamp_term = index.one(node, DAQ_OBSERVED_AT)
        if not isinstance(stamp_term, Literal):
            raise MalformedMetadata("observation is missing its daq:observedAt literal")
        graph = index.one(node, DAQ_IN_GRAPH)
        observations.append(
            Observation(
                dataset_iri=dataset,
                metric_iri=metric,
                value=_parse_value(value_term),
                observed_at=parse_timestamp(stamp_term.lexical),
                graph_iri=graph.text if isinstance(graph, Iri) else None,
            )
        )

    reports: List[QualityReport] = []
    for node in index.of_type(QPRO_REPORT):
        computed_on = _require_iri(index.one(node, QPRO_COMPUTED_ON), "qpro:computedOn")
        problems = [
            _parse_problem(index, problem_node)
            for problem_node in index.all(node, QPRO_HAS_PROBLEM)
        ]
        reports.append(QualityReport.make(computed_on, problems))

    observations.sort(key=lambda o: (o.dataset_iri, o.metric_iri, o.observed_at))
    reports.sort(key=lambda r: r.computed_on)
    return observations, reports
