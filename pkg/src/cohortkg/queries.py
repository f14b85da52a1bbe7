"""Competency queries over a corpus graph: match, limitation, quality.

Reports carry provenance (study id, title, registry link) for every match,
plus the bound values the decision used. Semantics that the underlying data
does not pin down are parameters with documented defaults:

- An arm's age-style ``upper_bound`` is mean + k*sd for mean/sd statistics
  (k defaults to 2) and q3 for median/iqr; ``lower_bound`` mirrors it.
- A subgroup counts as represented in the limitation report when a matching
  subset exists at or above ``underrep_threshold`` percent (default 10);
  below that it is underrepresented, with no subset at all it is absent.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from . import drugs, vocab
from .corpus import ArmView, CorpusView, GraphOrView, as_view
from .errors import ValidationError
from .graph import Graph, Iri


def local_name(iri: str) -> str:
    for sep in ("#", "/"):
        if sep in iri:
            return iri.rsplit(sep, 1)[1]
    return iri


class BoundKind(Enum):
    MEAN = "mean"
    MEDIAN = "median"
    UPPER_BOUND = "upper_bound"
    LOWER_BOUND = "lower_bound"


class Op(Enum):
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="

    def apply(self, value: float, threshold: float) -> bool:
        if self is Op.LT:
            return value < threshold
        if self is Op.LE:
            return value <= threshold
        if self is Op.GT:
            return value > threshold
        return value >= threshold


@dataclass(frozen=True)
class StatisticBound:
    which: BoundKind
    op: Op
    threshold: float

    def __post_init__(self):
        if not math.isfinite(self.threshold):
            raise ValidationError(f"threshold must be finite, got {self.threshold!r}")


@dataclass(frozen=True)
class HasSubsetWith:
    values: frozenset[str]
    min_percentage: float = 0.0

    def __post_init__(self):
        if not self.values:
            raise ValidationError("subset test needs at least one value IRI")
        if not (0 <= self.min_percentage <= 100):
            raise ValidationError(
                f"min_percentage must be in [0, 100], got {self.min_percentage}"
            )


@dataclass(frozen=True)
class HasCharacteristic:
    pass


CriterionTest = Union[StatisticBound, HasSubsetWith, HasCharacteristic]


@dataclass(frozen=True)
class FeatureCriterion:
    test: CriterionTest
    characteristic: Optional[str] = None  # class IRI; unused for subset tests

    def __post_init__(self):
        if not isinstance(self.test, HasSubsetWith) and not self.characteristic:
            raise ValidationError("criterion needs a characteristic IRI")

    def describe(self) -> str:
        if isinstance(self.test, HasSubsetWith):
            names = ", ".join(sorted(local_name(v) for v in self.test.values))
            return f"has a subset with {names} at >= {self.test.min_percentage}%"
        name = local_name(self.characteristic or "")
        if isinstance(self.test, StatisticBound):
            return f"{name} {self.test.which.value} {self.test.op.value} {self.test.threshold}"
        return f"reports {name}"


def criterion_from_dict(data: dict) -> FeatureCriterion:
    """Decode the JSON criterion shape shared by the CLI and the API."""
    from .labels import resolve_iri_or_label

    if not isinstance(data, dict) or "test" not in data:
        raise ValidationError("criterion must be an object with a 'test' field")
    test_data = data["test"]
    if not isinstance(test_data, dict) or "type" not in test_data:
        raise ValidationError("criterion test must be an object with a 'type' field")
    kind = test_data["type"]
    characteristic = data.get("characteristic")
    if characteristic is not None:
        characteristic = resolve_iri_or_label(str(characteristic))
    try:
        if kind == "has_subset_with":
            values = frozenset(
                resolve_iri_or_label(str(v), value=True)
                for v in test_data.get("values", [])
            )
            test: CriterionTest = HasSubsetWith(
                values, float(test_data.get("min_percentage", 0.0))
            )
        elif kind == "statistic_bound":
            test = StatisticBound(
                BoundKind(test_data["which"]),
                Op(test_data["op"]),
                float(test_data["threshold"]),
            )
        elif kind == "has_characteristic":
            test = HasCharacteristic()
        else:
            raise ValidationError(f"unknown criterion test type {kind!r}")
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"bad criterion test: {exc}") from exc
    return FeatureCriterion(test, characteristic)


@dataclass
class MatchEntry:
    study_id: str
    title: str
    registry_link: Optional[str]
    arm_ids: list[str]
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "study_id": self.study_id,
            "title": self.title,
            "registry_link": self.registry_link,
            "arm_ids": list(self.arm_ids),
            "values": self.values,
        }


@dataclass
class QueryReport:
    question: str
    granularity: str  # "study" | "arm"
    corpus_size: int
    total_count: int
    matched_count: int
    percentage: float
    matches: list[MatchEntry]
    coverage: Optional[list[dict]] = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "question": self.question,
            "granularity": self.granularity,
            "corpus_size": self.corpus_size,
            "total_count": self.total_count,
            "matched_count": self.matched_count,
            "percentage": self.percentage,
            "matches": [m.to_dict() for m in self.matches],
        }
        if self.coverage is not None:
            out["coverage"] = self.coverage
        out["warnings"] = list(self.warnings)
        return out


def _percentage(matched: int, total: int) -> float:
    return 100.0 * matched / total if total else 0.0


def arm_bound(
    arm: ArmView, characteristic: str, which: BoundKind, bound_k: float = 2.0
) -> Optional[float]:
    """The requested summary value of a characteristic, or None if absent."""
    char = arm.characteristic(characteristic)
    if char is None:
        return None
    if which is BoundKind.MEAN:
        return char.mean
    if which is BoundKind.MEDIAN:
        return char.median
    if which is BoundKind.UPPER_BOUND:
        if char.mean is not None and char.sd is not None:
            return char.mean + bound_k * char.sd
        return char.q3
    if char.mean is not None and char.sd is not None:
        return char.mean - bound_k * char.sd
    return char.q1


def _subset_matches(arm: ArmView, test: HasSubsetWith, bar: Optional[float] = None) -> bool:
    threshold = test.min_percentage if bar is None else max(test.min_percentage, bar)
    for subset in arm.subsets:
        if test.values <= subset.values and (subset.percentage or 0.0) >= threshold:
            return True
    return False


def _arm_satisfies(
    arm: ArmView, criterion: FeatureCriterion, bound_k: float
) -> tuple[bool, Optional[float]]:
    test = criterion.test
    if isinstance(test, HasSubsetWith):
        return _subset_matches(arm, test), None
    if isinstance(test, HasCharacteristic):
        return arm.characteristic(criterion.characteristic) is not None, None
    value = arm_bound(arm, criterion.characteristic, test.which, bound_k)
    if value is None:
        return False, None
    return test.op.apply(value, test.threshold), value


def _unknown_characteristic_warnings(
    view: CorpusView, criteria: list[FeatureCriterion]
) -> list[str]:
    seen_chars = {c.iri for s in view.studies for a in s.arms for c in a.characteristics}
    seen_values = {v for s in view.studies for a in s.arms for sub in a.subsets for v in sub.values}
    out = []
    for crit in criteria:
        if crit.characteristic and crit.characteristic not in seen_chars:
            out.append(
                f"characteristic {crit.characteristic} is not reported by any arm"
            )
        if isinstance(crit.test, HasSubsetWith):
            for value in sorted(crit.test.values - seen_values):
                out.append(f"subset value {value} does not occur in any subset")
    return out


def study_match(
    source: GraphOrView,
    criteria,
    conjunctive: bool = True,
    bound_k: float = 2.0,
) -> QueryReport:
    """Studies where some arm satisfies the criteria (all, or any)."""
    criteria = list(criteria)
    if not criteria:
        raise ValidationError("study_match needs at least one criterion")
    view = as_view(source)
    combine = all if conjunctive else any
    matches = []
    for study in view.studies:
        matched_arms = []
        values: dict[str, dict[str, float]] = {}
        for arm in study.arms:
            results = [_arm_satisfies(arm, c, bound_k) for c in criteria]
            if combine(ok for ok, _ in results):
                matched_arms.append(arm.arm_id)
                used = {
                    c.describe(): v
                    for c, (_, v) in zip(criteria, results)
                    if v is not None
                }
                if used:
                    values[arm.arm_id] = used
        if matched_arms:
            matches.append(
                MatchEntry(study.study_id, study.title, study.registry_link,
                           matched_arms, values)
            )
    joiner = " and " if conjunctive else " or "
    question = "studies where some arm " + joiner.join(c.describe() for c in criteria)
    return QueryReport(
        question=question,
        granularity="study",
        corpus_size=len(view),
        total_count=len(view),
        matched_count=len(matches),
        percentage=_percentage(len(matches), len(view)),
        matches=matches,
        warnings=_unknown_characteristic_warnings(view, criteria),
    )


def study_limitation(
    source: GraphOrView,
    subgroup: FeatureCriterion,
    underrep_threshold: float = 10.0,
    bound_k: float = 2.0,
) -> QueryReport:
    """Representation of a subgroup, reported arm by arm.

    Statistic-bound subgroups are counted at arm granularity (the headline
    percentage is matching arms over all arms); subset subgroups at study
    granularity, where a study represents the subgroup only at or above
    ``underrep_threshold`` percent.
    """
    view = as_view(source)
    matches = []
    coverage = []
    matched_units = 0
    if isinstance(subgroup.test, HasSubsetWith):
        granularity = "study"
        total_units = len(view)
        for study in view.studies:
            arms_with = [
                a.arm_id for a in study.arms
                if _subset_matches(a, subgroup.test, underrep_threshold)
            ]
            present_at_all = any(
                _subset_matches(a, subgroup.test) for a in study.arms
            )
            status = (
                "represented"
                if arms_with
                else ("underrepresented" if present_at_all else "absent")
            )
            coverage.append(
                {
                    "study_id": study.study_id,
                    "status": status,
                    "matching_arm_ids": arms_with,
                    "non_matching_arm_ids": [
                        a.arm_id for a in study.arms if a.arm_id not in arms_with
                    ],
                }
            )
            if arms_with:
                matched_units += 1
                matches.append(
                    MatchEntry(study.study_id, study.title, study.registry_link,
                               arms_with)
                )
    else:
        granularity = "arm"
        total_units = view.total_arms
        for study in view.studies:
            results = {
                a.arm_id: _arm_satisfies(a, subgroup, bound_k) for a in study.arms
            }
            arms_with = [aid for aid, (ok, _) in results.items() if ok]
            absent = all(
                a.characteristic(subgroup.characteristic) is None for a in study.arms
            )
            coverage.append(
                {
                    "study_id": study.study_id,
                    "status": "absent" if absent else (
                        "represented" if arms_with else "unrepresented"
                    ),
                    "matching_arm_ids": arms_with,
                    "non_matching_arm_ids": [
                        aid for aid in results if aid not in arms_with
                    ],
                }
            )
            matched_units += len(arms_with)
            if arms_with:
                values = {
                    aid: {subgroup.describe(): v}
                    for aid, (ok, v) in results.items()
                    if ok and v is not None
                }
                matches.append(
                    MatchEntry(study.study_id, study.title, study.registry_link,
                               arms_with, values)
                )
    return QueryReport(
        question="arms representing: " + subgroup.describe(),
        granularity=granularity,
        corpus_size=len(view),
        total_count=total_units,
        matched_count=matched_units,
        percentage=_percentage(matched_units, total_units),
        matches=matches,
        coverage=coverage,
        warnings=_unknown_characteristic_warnings(view, [subgroup]),
    )


def drug_family_closure(vocabulary_graph: Graph, family: str) -> set[str]:
    """Reflexive-transitive subclass closure below a family class."""
    root = Iri(family)
    known = bool(
        vocabulary_graph.match(root, None, None)
        or vocabulary_graph.match(None, None, root)
    )
    if not known:
        warnings.warn(f"class {family} not present in vocabulary", stacklevel=2)
        return {family}
    closure: set[str] = set()
    queue = [root]
    while queue:
        cls = queue.pop()
        if cls.value in closure:
            continue
        closure.add(cls.value)
        for child in vocabulary_graph.subjects(vocab.RDFS_SUBCLASS_OF, cls):
            if isinstance(child, Iri) and child.value not in closure:
                queue.append(child)
    return closure


def study_quality(
    source: GraphOrView,
    min_cohort: int,
    drug_family: str,
    arm_fraction: float,
    vocabulary: Optional[Graph] = None,
) -> QueryReport:
    """Cohort-size and treatment-share screening.

    A study matches when its cohort (sum of arm sizes) reaches ``min_cohort``
    and some arm both carries an intervention characteristic in the drug
    family's subclass closure and encloses at least ``arm_fraction`` of the
    cohort. Heterogeneity is reported descriptively as the count of distinct
    intervention characteristics per study.
    """
    if min_cohort < 0:
        raise ValidationError(f"min_cohort must be >= 0, got {min_cohort}")
    if not (0 < arm_fraction <= 1):
        raise ValidationError(f"arm_fraction must be in (0, 1], got {arm_fraction}")
    vocabulary = vocabulary if vocabulary is not None else drugs.vocabulary_graph()
    family_node = Iri(drug_family)
    if not (
        vocabulary.match(family_node, None, None)
        or vocabulary.match(None, None, family_node)
    ):
        raise ValidationError(f"drug family {drug_family} is not in the vocabulary")
    closure = drug_family_closure(vocabulary, drug_family)
    drug_classes = {
        s.value
        for s in vocabulary.subjects(vocab.RDF_TYPE, vocab.OWL_CLASS)
        if isinstance(s, Iri)
    }

    view = as_view(source)
    matches = []
    for study in view.studies:
        cohort = study.cohort_size
        if cohort < min_cohort:
            continue
        qualifying = {}
        for arm in study.arms:
            has_family_drug = any(c.iri in closure for c in arm.characteristics)
            if has_family_drug and arm.population_size >= arm_fraction * cohort:
                qualifying[arm.arm_id] = arm.population_size
        if qualifying:
            interventions = {
                c.iri
                for a in study.arms
                for c in a.characteristics
                if c.link == "property" and c.iri in drug_classes
            }
            matches.append(
                MatchEntry(
                    study.study_id,
                    study.title,
                    study.registry_link,
                    sorted(qualifying),
                    {
                        "cohort_size": cohort,
                        "qualifying_arms": qualifying,
                        "distinct_interventions": len(interventions),
                    },
                )
            )
    question = (
        f"studies with cohort >= {min_cohort} and a "
        f"{local_name(drug_family)}-family arm holding >= "
        f"{round(100 * arm_fraction, 1)}% of the cohort"
    )
    return QueryReport(
        question=question,
        granularity="study",
        corpus_size=len(view),
        total_count=len(view),
        matched_count=len(matches),
        percentage=_percentage(len(matches), len(view)),
        matches=matches,
    )
