"""Namespace IRIs and the vocabulary constants used by every graph pattern."""

from .graph import Iri

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
SIO = "http://semanticscience.org/resource/"
SCO = "https://w3id.org/sco#"
SCO_I = "https://w3id.org/sco/instance#"
SCO_X = "https://w3id.org/sco/extension#"
SCO_D = "https://w3id.org/sco/drugs#"
HASCO = "http://hadatac.org/ont/hasco/"
DCT = "http://purl.org/dc/terms/"

DEFAULT_PREFIXES: dict[str, str] = {
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xsd": XSD,
    "sio": SIO,
    "sco": SCO,
    "sco-i": SCO_I,
    "sco-x": SCO_X,
    "sco-d": SCO_D,
    "hasco": HASCO,
    "dct": DCT,
}

# Serialization order: these first, any extra prefixes after, alphabetically.
PREFIX_ORDER = ("rdf", "rdfs", "owl", "xsd", "sio", "sco", "sco-i")

RDF_TYPE = Iri(RDF + "type")
RDFS_SUBCLASS_OF = Iri(RDFS + "subClassOf")
RDFS_LABEL = Iri(RDFS + "label")
RDFS_COMMENT = Iri(RDFS + "comment")
OWL_CLASS = Iri(OWL + "Class")
OWL_RESTRICTION = Iri(OWL + "Restriction")
OWL_ON_PROPERTY = Iri(OWL + "onProperty")
OWL_SOME_VALUES_FROM = Iri(OWL + "someValuesFrom")

SIO_HAS_ATTRIBUTE = Iri(SIO + "hasAttribute")
SIO_HAS_PROPERTY = Iri(SIO + "hasProperty")
SIO_HAS_VALUE = Iri(SIO + "hasValue")
SIO_HAS_UNIT = Iri(SIO + "hasUnit")
SIO_IS_PARTICIPANT_IN = Iri(SIO + "isParticipantIn")
SIO_MEAN = Iri(SIO + "Mean")
SIO_STANDARD_DEVIATION = Iri(SIO + "StandardDeviation")
SIO_MEDIAN = Iri(SIO + "Median")
SIO_MINIMAL_VALUE = Iri(SIO + "MinimalValue")
SIO_MAXIMAL_VALUE = Iri(SIO + "MaximalValue")
SIO_AGE = Iri(SIO + "Age")
SIO_STUDY_SUBJECT = Iri(SIO + "StudySubject")
SIO_YEAR = Iri(SIO + "Year")

SCO_INTERVENTION_ARM = Iri(SCO + "InterventionArm")
SCO_CONTROL_ARM = Iri(SCO + "ControlArm")
SCO_POPULATION_SIZE = Iri(SCO + "PopulationSize")
SCO_PERCENTAGE = Iri(SCO + "Percentage")
SCO_COUNT = Iri(SCO + "Count")

HASCO_RESEARCH_STUDY = Iri(HASCO + "ResearchStudy")

DCT_TITLE = Iri(DCT + "title")
DCT_SOURCE = Iri(DCT + "source")
DCT_IDENTIFIER = Iri(DCT + "identifier")
DCT_DESCRIPTION = Iri(DCT + "description")

# hasProperty is a specialization of hasAttribute; the single sub-property
# rule applied when a match asks for expansion.
SUBPROPERTIES: dict[Iri, tuple[Iri, ...]] = {
    SIO_HAS_ATTRIBUTE: (SIO_HAS_ATTRIBUTE, SIO_HAS_PROPERTY),
}

STATISTIC_CLASSES = (
    SIO_MEAN,
    SIO_STANDARD_DEVIATION,
    SIO_MEDIAN,
    SIO_MINIMAL_VALUE,
    SIO_MAXIMAL_VALUE,
    SCO_PERCENTAGE,
    SCO_COUNT,
)
