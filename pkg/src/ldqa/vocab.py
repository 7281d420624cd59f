"""Namespace IRIs used across parsing, metrics and metadata emission."""

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
XSD_BOOLEAN = XSD + "boolean"
XSD_INTEGER = XSD + "integer"
XSD_DOUBLE = XSD + "double"
XSD_DATETIME = XSD + "dateTime"

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDF_TYPE = RDF + "type"
RDF_FIRST = RDF + "first"
RDF_REST = RDF + "rest"
RDF_SEQ = RDF + "Seq"
RDF_BAG = RDF + "Bag"
RDF_ALT = RDF + "Alt"
RDF_STATEMENT = RDF + "Statement"
RDF_SUBJECT = RDF + "subject"
RDF_PREDICATE = RDF + "predicate"
RDF_OBJECT = RDF + "object"

RDFS = "http://www.w3.org/2000/01/rdf-schema#"
RDFS_LABEL = RDFS + "label"
RDFS_COMMENT = RDFS + "comment"
RDFS_SUBCLASSOF = RDFS + "subClassOf"

OWL = "http://www.w3.org/2002/07/owl#"
OWL_DISJOINTWITH = OWL + "disjointWith"

VOID = "http://rdfs.org/ns/void#"
VOID_DATASET = VOID + "Dataset"
VOID_FEATURE = VOID + "feature"

DCAT = "http://www.w3.org/ns/dcat#"
DCAT_DATASET = DCAT + "Dataset"

DCTERMS = "http://purl.org/dc/terms/"
DC11 = "http://purl.org/dc/elements/1.1/"
CC = "http://creativecommons.org/ns#"

PROV = "http://www.w3.org/ns/prov#"
PROV_ACTIVITY = PROV + "Activity"
PROV_WAS_ASSOCIATED_WITH = PROV + "wasAssociatedWith"
PROV_USED = PROV + "used"

# Quality-metadata vocabularies follow the purl.org/eis/vocab/{prefix} scheme.
DAQ = "http://purl.org/eis/vocab/daq#"
QPRO = "http://purl.org/eis/vocab/qpro#"
DQM = "http://purl.org/eis/vocab/dqm#"

# Metric taxonomy node namespaces (dimension and category identifiers).
DQD = "http://purl.org/eis/vocab/dqd#"
DQC = "http://purl.org/eis/vocab/dqc#"
