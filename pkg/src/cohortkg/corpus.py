"""Read-side views over a corpus graph.

CorpusView walks the graph once and exposes studies, arms, characteristics,
and subsets as plain objects. Everything downstream (queries, similarity, the
HTTP API) reads through these views, so the graph patterns are interpreted in
exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import vocab
from .errors import NotFoundError
from .graph import BlankNode, Graph, Iri, Literal, Term
from .ingest import arm_id_from_iri, study_id_from_iri
from .records import ArmKind


@dataclass
class CharView:
    iri: str
    link: str  # "attribute" | "property"
    unit: Optional[str]
    stats: dict[str, float]  # statistic class IRI -> value

    @property
    def mean(self) -> Optional[float]:
        return self.stats.get(vocab.SIO_MEAN.value)

    @property
    def sd(self) -> Optional[float]:
        return self.stats.get(vocab.SIO_STANDARD_DEVIATION.value)

    @property
    def median(self) -> Optional[float]:
        return self.stats.get(vocab.SIO_MEDIAN.value)

    @property
    def q1(self) -> Optional[float]:
        return self.stats.get(vocab.SIO_MINIMAL_VALUE.value)

    @property
    def q3(self) -> Optional[float]:
        return self.stats.get(vocab.SIO_MAXIMAL_VALUE.value)


@dataclass
class SubsetView:
    iri: str
    values: frozenset[str]
    percentage: Optional[float]


@dataclass
class ArmView:
    iri: str
    arm_id: str
    kind: str
    population_size: int
    characteristics: list[CharView] = field(default_factory=list)
    subsets: list[SubsetView] = field(default_factory=list)

    def characteristic(self, iri: str) -> Optional[CharView]:
        for c in self.characteristics:
            if c.iri == iri:
                return c
        return None


@dataclass
class StudyView:
    iri: str
    study_id: str
    title: str
    registry_link: Optional[str]
    arms: list[ArmView] = field(default_factory=list)

    @property
    def cohort_size(self) -> int:
        return sum(a.population_size for a in self.arms)


def _lexical(term: Optional[Term]) -> Optional[str]:
    return term.lexical if isinstance(term, Literal) else None


def _numeric(term: Optional[Term]):
    return term.to_python() if isinstance(term, Literal) and term.is_numeric else None


class CorpusView:
    """Structured read access to a corpus graph, ordered by study id."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.studies: list[StudyView] = []
        for study_node in graph.subjects(vocab.RDF_TYPE, vocab.HASCO_RESEARCH_STUDY):
            if isinstance(study_node, Iri):
                self.studies.append(self._read_study(study_node))
        self.studies.sort(key=lambda s: s.study_id)
        self._by_id = {s.study_id: s for s in self.studies}

    def __len__(self) -> int:
        return len(self.studies)

    def study(self, study_id: str) -> StudyView:
        try:
            return self._by_id[study_id]
        except KeyError:
            raise NotFoundError(f"unknown study: {study_id!r}") from None

    def arm(self, study_id: str, arm_id: str) -> ArmView:
        study = self.study(study_id)
        for arm in study.arms:
            if arm.arm_id == arm_id:
                return arm
        raise NotFoundError(f"unknown arm {arm_id!r} in study {study_id!r}")

    @property
    def total_arms(self) -> int:
        return sum(len(s.arms) for s in self.studies)

    def _read_study(self, node: Iri) -> StudyView:
        g = self.graph
        registry = g.value(node, vocab.DCT_SOURCE)
        study = StudyView(
            iri=node.value,
            study_id=study_id_from_iri(node),
            title=_lexical(g.value(node, vocab.DCT_TITLE)) or "",
            registry_link=registry.value if isinstance(registry, Iri) else None,
        )
        for arm_node in g.subjects(vocab.SIO_IS_PARTICIPANT_IN, node):
            if isinstance(arm_node, Iri):
                study.arms.append(self._read_arm(arm_node))
        study.arms.sort(key=lambda a: a.arm_id)
        return study

    def _read_arm(self, node: Iri) -> ArmView:
        g = self.graph
        types = set(g.objects(node, vocab.RDF_TYPE))
        kind = (
            ArmKind.CONTROL.value
            if vocab.SCO_CONTROL_ARM in types
            else ArmKind.INTERVENTION.value
        )
        arm = ArmView(node.value, arm_id_from_iri(node), kind, 0)
        for child in g.objects(node, vocab.SIO_HAS_ATTRIBUTE, expand=True):
            if not isinstance(child, BlankNode):
                continue
            ctype = g.value(child, vocab.RDF_TYPE)
            if ctype == vocab.SCO_POPULATION_SIZE:
                size = _numeric(g.value(child, vocab.SIO_HAS_VALUE))
                arm.population_size = int(size) if size is not None else 0
                continue
            if not isinstance(ctype, Iri):
                continue
            link = (
                "property"
                if g.match(node, vocab.SIO_HAS_PROPERTY, child)
                else "attribute"
            )
            unit = g.value(child, vocab.SIO_HAS_UNIT)
            stats: dict[str, float] = {}
            for stat_node in g.objects(child, vocab.SIO_HAS_ATTRIBUTE):
                stat_type = g.value(stat_node, vocab.RDF_TYPE)
                value = _numeric(g.value(stat_node, vocab.SIO_HAS_VALUE))
                if isinstance(stat_type, Iri) and value is not None:
                    stats[stat_type.value] = value
            arm.characteristics.append(
                CharView(
                    ctype.value,
                    link,
                    unit.value if isinstance(unit, Iri) else None,
                    stats,
                )
            )
        for sub in self.graph.subjects(vocab.RDFS_SUBCLASS_OF, node):
            if isinstance(sub, Iri):
                arm.subsets.append(self._read_subset(sub))
        return arm

    def _read_subset(self, node: Iri) -> SubsetView:
        g = self.graph
        values = set()
        for parent in g.objects(node, vocab.RDFS_SUBCLASS_OF):
            if isinstance(parent, BlankNode) and g.match(
                parent, vocab.RDF_TYPE, vocab.OWL_RESTRICTION
            ):
                value = g.value(parent, vocab.OWL_SOME_VALUES_FROM)
                if isinstance(value, Iri):
                    values.add(value.value)
        percentage = None
        for child in g.objects(node, vocab.SIO_HAS_ATTRIBUTE):
            if g.match(child, vocab.RDF_TYPE, vocab.SCO_PERCENTAGE):
                percentage = _numeric(g.value(child, vocab.SIO_HAS_VALUE))
        return SubsetView(node.value, frozenset(values), percentage)


GraphOrView = Union[Graph, CorpusView]


def as_view(source: GraphOrView) -> CorpusView:
    return source if isinstance(source, CorpusView) else CorpusView(source)
