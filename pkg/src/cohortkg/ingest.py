"""Study JSON ingestion and knowledge-graph construction.

Input is one JSON file per study (schema documented in the README). Decoding
validates every record invariant and reports violations as diagnostics that
name the file and field path. Graph construction follows the fixed modeling
patterns: arms are punned classes typed sco:InterventionArm or sco:ControlArm
under sio:StudySubject, characteristics hang off arms via sio:hasAttribute or
sio:hasProperty with reified statistic nodes, and categorical subsets become
subclasses carrying owl:Restriction membership plus a percentage node.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import Optional

from . import labels, vocab
from .errors import CorpusError, SchemaError, ValidationError
from .graph import Graph, Iri, Term, decimal, integer, string
from .records import (
    ArmKind,
    CharacteristicValue,
    Count,
    MeanSd,
    MedianIqr,
    Percentage,
    Persistence,
    Statistic,
    StudyArmRecord,
    StudyRecord,
    SubsetRecord,
)


def study_iri(study_id: str) -> Iri:
    return Iri(vocab.SCO_I + f"{study_id}Study")


def arm_iri(arm_id: str) -> Iri:
    return Iri(vocab.SCO_I + f"{arm_id}Arm")


def subset_iri(arm_id: str, subset_id: str) -> Iri:
    return Iri(vocab.SCO_I + f"{arm_id}{subset_id}Subset")


def study_id_from_iri(iri: Iri) -> str:
    local = iri.value[len(vocab.SCO_I):]
    return local[: -len("Study")] if local.endswith("Study") else local


def arm_id_from_iri(iri: Iri) -> str:
    local = iri.value[len(vocab.SCO_I):]
    return local[: -len("Arm")] if local.endswith("Arm") else local


# --- JSON decoding ----------------------------------------------------------

_REQUIRED = object()


class _Decoder:
    """Collects diagnostics with field paths while decoding one study file."""

    def __init__(self, source: str):
        self.source = source
        self.diagnostics: list[str] = []

    def fail(self, path: str, message: str) -> None:
        self.diagnostics.append(f"{self.source}: {path}: {message}")

    def require(self, data: dict, path: str, key: str, types, default=_REQUIRED):
        if key not in data:
            if default is not _REQUIRED:
                return default
            self.fail(f"{path}.{key}" if path else key, "missing required field")
            return None
        value = data[key]
        if not isinstance(value, types):
            names = (
                types.__name__
                if isinstance(types, type)
                else "/".join(t.__name__ for t in types)
            )
            self.fail(f"{path}.{key}" if path else key, f"expected {names}")
            return None
        return value

    def statistic(self, data, path: str) -> Optional[Statistic]:
        if not isinstance(data, dict):
            self.fail(path, "expected an object")
            return None
        kind = self.require(data, path, "type", str)
        try:
            if kind == "mean_sd":
                mean = self.require(data, path, "mean", (int, float))
                sd = self.require(data, path, "sd", (int, float))
                if mean is None or sd is None:
                    return None
                return MeanSd(float(mean), float(sd))
            if kind == "median_iqr":
                vals = [self.require(data, path, k, (int, float)) for k in ("median", "q1", "q3")]
                if any(v is None for v in vals):
                    return None
                return MedianIqr(float(vals[0]), float(vals[1]), float(vals[2]))
            if kind == "percentage":
                value = self.require(data, path, "value", (int, float))
                return None if value is None else Percentage(float(value))
            if kind == "count":
                value = self.require(data, path, "value", int)
                return None if value is None else Count(value)
        except ValidationError as exc:
            self.fail(path, str(exc))
            return None
        if kind is not None:
            self.fail(f"{path}.type", f"unknown statistic type {kind!r}")
        return None

    def characteristic(self, data, path: str) -> Optional[CharacteristicValue]:
        if not isinstance(data, dict):
            self.fail(path, "expected an object")
            return None
        label = self.require(data, path, "label", str)
        stat_data = self.require(data, path, "statistic", dict)
        if label is None or stat_data is None:
            return None
        stat = self.statistic(stat_data, f"{path}.statistic")
        if stat is None:
            return None
        definition = labels.resolve_characteristic(label)
        persistence = definition.persistence
        explicit = self.require(data, path, "persistence", str, default=None)
        if explicit is not None:
            try:
                persistence = Persistence(explicit)
            except ValueError:
                self.fail(f"{path}.persistence", f"unknown persistence {explicit!r}")
                return None
            if (
                persistence is Persistence.PROPERTY
                and definition.family not in ("disease", "drug", "extension")
            ):
                self.fail(
                    f"{path}.persistence",
                    f"property persistence is reserved for disease/intervention "
                    f"characteristics, not {definition.family!r}",
                )
                return None
        unit_label = self.require(data, path, "unit", str, default=None)
        unit = None
        if unit_label is not None:
            unit = labels.UNITS.get(unit_label)
            if unit is None:
                self.fail(f"{path}.unit", f"unknown unit {unit_label!r}")
                return None
        elif definition.unit and isinstance(stat, (MeanSd, MedianIqr)):
            unit = definition.unit
        try:
            return CharacteristicValue(definition.iri, definition.label, stat, persistence, unit)
        except ValidationError as exc:
            self.fail(path, str(exc))
            return None

    def subset(self, data, path: str) -> Optional[SubsetRecord]:
        if not isinstance(data, dict):
            self.fail(path, "expected an object")
            return None
        subset_id = self.require(data, path, "subset_id", str)
        defined_by = self.require(data, path, "defined_by", list)
        percentage = self.require(data, path, "percentage", (int, float))
        if subset_id is None or defined_by is None or percentage is None:
            return None
        pairs = []
        for i, pair in enumerate(defined_by):
            ppath = f"{path}.defined_by[{i}]"
            if not isinstance(pair, dict):
                self.fail(ppath, "expected an object")
                return None
            label = self.require(pair, ppath, "label", str)
            value = self.require(pair, ppath, "value", str)
            if label is None or value is None:
                return None
            pairs.append((labels.resolve_characteristic(label).iri, labels.resolve_value(value)))
        try:
            return SubsetRecord(subset_id, tuple(pairs), float(percentage))
        except ValidationError as exc:
            self.fail(path, str(exc))
            return None

    def arm(self, data, path: str) -> Optional[StudyArmRecord]:
        if not isinstance(data, dict):
            self.fail(path, "expected an object")
            return None
        arm_id = self.require(data, path, "arm_id", str)
        kind_text = self.require(data, path, "kind", str)
        size = self.require(data, path, "population_size", int)
        chars_data = self.require(data, path, "characteristics", list, default=[])
        subsets_data = self.require(data, path, "subsets", list, default=[])
        notes = self.require(data, path, "notes", str, default=None)
        if arm_id is None or kind_text is None or size is None:
            return None
        try:
            kind = ArmKind(kind_text)
        except ValueError:
            self.fail(f"{path}.kind", f"must be 'intervention' or 'control', got {kind_text!r}")
            return None
        chars = []
        for i, cdata in enumerate(chars_data or []):
            c = self.characteristic(cdata, f"{path}.characteristics[{i}]")
            if c is None:
                return None
            chars.append(c)
        subsets = []
        for i, sdata in enumerate(subsets_data or []):
            s = self.subset(sdata, f"{path}.subsets[{i}]")
            if s is None:
                return None
            subsets.append(s)
        try:
            return StudyArmRecord(arm_id, kind, size, tuple(chars), tuple(subsets), notes)
        except ValidationError as exc:
            self.fail(path, str(exc))
            return None

    def study(self, data) -> Optional[StudyRecord]:
        if not isinstance(data, dict):
            self.fail("", "top level must be an object")
            return None
        study_id = self.require(data, "", "study_id", str)
        title = self.require(data, "", "title", str)
        registry = self.require(data, "", "registry_link", str, default=None)
        arms_data = self.require(data, "", "arms", list)
        if study_id is None or title is None or arms_data is None:
            return None
        arms = []
        for i, adata in enumerate(arms_data):
            arm = self.arm(adata, f"arms[{i}]")
            if arm is None:
                return None
            arms.append(arm)
        try:
            record = StudyRecord(study_id, title, tuple(arms), registry)
        except ValidationError as exc:
            self.fail("", str(exc))
            return None
        shared = {tuple(sorted(c.characteristic for c in a.characteristics)) for a in arms}
        if len(shared) > 1:
            warnings.warn(
                f"study {study_id!r}: arms do not share one characteristic set",
                stacklevel=4,
            )
        return record


def decode_study(data: dict, source: str = "<data>") -> StudyRecord:
    """Decode one study JSON object, raising SchemaError with diagnostics."""
    dec = _Decoder(source)
    record = dec.study(data)
    if record is None:
        raise SchemaError(f"invalid study data in {source}", dec.diagnostics)
    return record


def load_study_json(path) -> StudyRecord:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path.name}: not valid JSON: {exc}") from exc
    return decode_study(data, path.name)


def load_corpus(path) -> list[StudyRecord]:
    """All study files in a directory, validated; file order is by name."""
    directory = Path(path)
    if not directory.is_dir():
        raise CorpusError(f"corpus path is not a directory: {directory}")
    studies: list[StudyRecord] = []
    diagnostics: list[str] = []
    seen: dict[str, str] = {}
    for file in sorted(directory.glob("*.json")):
        try:
            study = load_study_json(file)
        except SchemaError as exc:
            diagnostics.extend(exc.diagnostics)
            continue
        if study.study_id in seen:
            diagnostics.append(
                f"{file.name}: duplicate study_id {study.study_id!r} "
                f"(already defined in {seen[study.study_id]})"
            )
            continue
        seen[study.study_id] = file.name
        studies.append(study)
    if diagnostics:
        raise CorpusError(
            f"corpus {directory} has {len(diagnostics)} schema violation(s)",
            diagnostics,
        )
    return studies


# --- graph construction ------------------------------------------------------

_KIND_CLASS = {
    ArmKind.INTERVENTION: vocab.SCO_INTERVENTION_ARM,
    ArmKind.CONTROL: vocab.SCO_CONTROL_ARM,
}

_LINK = {
    Persistence.ATTRIBUTE: vocab.SIO_HAS_ATTRIBUTE,
    Persistence.PROPERTY: vocab.SIO_HAS_PROPERTY,
}


def _emit_statistic(g: Graph, parent: Term, stat: Statistic) -> None:
    def node(stat_class: Iri, value) -> None:
        b = g.new_bnode()
        g.add(b, vocab.RDF_TYPE, stat_class)
        g.add(b, vocab.SIO_HAS_VALUE, value)
        g.add(parent, vocab.SIO_HAS_ATTRIBUTE, b)

    if isinstance(stat, MeanSd):
        node(vocab.SIO_MEAN, decimal(stat.mean))
        node(vocab.SIO_STANDARD_DEVIATION, decimal(stat.sd))
    elif isinstance(stat, MedianIqr):
        node(vocab.SIO_MEDIAN, decimal(stat.median))
        node(vocab.SIO_MINIMAL_VALUE, decimal(stat.q1))
        node(vocab.SIO_MAXIMAL_VALUE, decimal(stat.q3))
    elif isinstance(stat, Percentage):
        node(vocab.SCO_PERCENTAGE, decimal(stat.value))
    elif isinstance(stat, Count):
        node(vocab.SCO_COUNT, integer(stat.value))
    else:  # pragma: no cover
        raise TypeError(f"unknown statistic: {stat!r}")


def build_graph(study: StudyRecord, graph: Optional[Graph] = None) -> Graph:
    """The knowledge graph for one study (appended to ``graph`` if given)."""
    g = graph if graph is not None else Graph()
    study_node = study_iri(study.study_id)
    g.add(study_node, vocab.RDF_TYPE, vocab.HASCO_RESEARCH_STUDY)
    g.add(study_node, vocab.DCT_TITLE, string(study.title))
    if study.registry_link:
        g.add(study_node, vocab.DCT_SOURCE, Iri(study.registry_link))

    for arm in study.arms:
        arm_node = arm_iri(arm.arm_id)
        g.add(arm_node, vocab.RDF_TYPE, vocab.OWL_CLASS)
        g.add(arm_node, vocab.RDF_TYPE, _KIND_CLASS[arm.kind])
        g.add(arm_node, vocab.RDFS_SUBCLASS_OF, vocab.SIO_STUDY_SUBJECT)
        g.add(arm_node, vocab.SIO_IS_PARTICIPANT_IN, study_node)

        size_node = g.new_bnode()
        g.add(size_node, vocab.RDF_TYPE, vocab.SCO_POPULATION_SIZE)
        g.add(size_node, vocab.SIO_HAS_VALUE, integer(arm.population_size))
        g.add(arm_node, vocab.SIO_HAS_ATTRIBUTE, size_node)

        for char in arm.characteristics:
            c = g.new_bnode()
            g.add(c, vocab.RDF_TYPE, Iri(char.characteristic))
            if char.unit:
                g.add(c, vocab.SIO_HAS_UNIT, Iri(char.unit))
            _emit_statistic(g, c, char.statistic)
            g.add(arm_node, _LINK[char.persistence], c)

        for subset in arm.subsets:
            sub = subset_iri(arm.arm_id, subset.subset_id)
            g.add(sub, vocab.RDF_TYPE, vocab.OWL_CLASS)
            g.add(sub, vocab.RDFS_SUBCLASS_OF, arm_node)
            for characteristic, value in subset.defined_by:
                link = _LINK[labels_persistence(characteristic)]
                r = g.new_bnode()
                g.add(r, vocab.RDF_TYPE, vocab.OWL_RESTRICTION)
                g.add(r, vocab.OWL_ON_PROPERTY, link)
                g.add(r, vocab.OWL_SOME_VALUES_FROM, Iri(value))
                g.add(sub, vocab.RDFS_SUBCLASS_OF, r)
            _emit_statistic(g, sub, Percentage(subset.percentage))

        if arm.notes:
            g.add(arm_node, vocab.DCT_DESCRIPTION, string(arm.notes))
    return g


def labels_persistence(characteristic_iri: str) -> Persistence:
    """Linking property family for a characteristic used inside a subset."""
    for definition in labels.CHARACTERISTICS.values():
        if definition.iri == characteristic_iri:
            return definition.persistence
    from .drugs import DRUG_DEFS

    for definition in DRUG_DEFS.values():
        if definition.iri == characteristic_iri:
            return definition.persistence
    return Persistence.ATTRIBUTE


def build_corpus_graph(studies) -> Graph:
    """Union of per-study graphs; study ids and minted IRIs must not collide."""
    ids = [s.study_id for s in studies]
    if len(ids) != len(set(ids)):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise CorpusError(f"duplicate study ids in corpus: {', '.join(dup)}")
    owners: dict[str, str] = {}
    for study in studies:
        minted = [study_iri(study.study_id).value]
        for arm in study.arms:
            minted.append(arm_iri(arm.arm_id).value)
            minted.extend(subset_iri(arm.arm_id, s.subset_id).value for s in arm.subsets)
        for iri in minted:
            if iri in owners and owners[iri] != study.study_id:
                raise CorpusError(
                    f"IRI collision: {iri} minted by both study "
                    f"{owners[iri]!r} and study {study.study_id!r}"
                )
            owners[iri] = study.study_id
    g = Graph()
    for study in studies:
        build_graph(study, g)
    return g


def corpus_stats(studies) -> dict:
    """Counts used by the CLI summary and the fixture manifest."""
    return {
        "studies": len(studies),
        "arms": sum(len(s.arms) for s in studies),
        "characteristics": sum(len(a.characteristics) for s in studies for a in s.arms),
        "subsets": sum(len(a.subsets) for s in studies for a in s.arms),
    }
