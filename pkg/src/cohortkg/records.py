"""Ingestion-side record types for study population tables.

One StudyRecord describes one study: arms are the table's columns, each arm
carries the characteristic rows with their descriptive statistics and any
categorical subsets. All invariants are enforced at construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .errors import ValidationError

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")


def _check_ident(value: str, what: str) -> None:
    if not _IDENT_RE.match(value):
        raise ValidationError(f"{what} must match [A-Za-z][A-Za-z0-9_-]*, got {value!r}")


def _check_finite(value: float, what: str) -> None:
    if not math.isfinite(value):
        raise ValidationError(f"{what} must be finite, got {value!r}")


class ArmKind(Enum):
    INTERVENTION = "intervention"
    CONTROL = "control"


class Persistence(Enum):
    ATTRIBUTE = "attribute"
    PROPERTY = "property"


@dataclass(frozen=True)
class MeanSd:
    mean: float
    sd: float

    def __post_init__(self):
        _check_finite(self.mean, "mean")
        _check_finite(self.sd, "sd")
        if self.sd < 0:
            raise ValidationError(f"sd must be >= 0, got {self.sd}")


@dataclass(frozen=True)
class MedianIqr:
    median: float
    q1: float
    q3: float

    def __post_init__(self):
        for name in ("median", "q1", "q3"):
            _check_finite(getattr(self, name), name)
        if not (self.q1 <= self.median <= self.q3):
            raise ValidationError(
                f"quartiles must satisfy q1 <= median <= q3, got "
                f"{self.q1}/{self.median}/{self.q3}"
            )


@dataclass(frozen=True)
class Percentage:
    value: float

    def __post_init__(self):
        _check_finite(self.value, "percentage")
        if not (0 <= self.value <= 100):
            raise ValidationError(f"percentage must be in [0, 100], got {self.value}")


@dataclass(frozen=True)
class Count:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValidationError(f"count must be >= 0, got {self.value}")


Statistic = Union[MeanSd, MedianIqr, Percentage, Count]


@dataclass(frozen=True)
class CharacteristicValue:
    """One table cell: a characteristic with its statistic and unit."""

    characteristic: str  # class IRI
    label: str
    statistic: Statistic
    persistence: Persistence = Persistence.ATTRIBUTE
    unit: Optional[str] = None  # unit IRI

    def __post_init__(self):
        if isinstance(self.statistic, (MeanSd, MedianIqr)) and not self.unit:
            raise ValidationError(
                f"characteristic {self.label!r}: a unit is required for "
                "mean/sd and median/iqr statistics"
            )


@dataclass(frozen=True)
class SubsetRecord:
    """A categorical subset of an arm, e.g. Male + AfricanAmerican at 12%."""

    subset_id: str
    defined_by: tuple[tuple[str, str], ...]  # (characteristic IRI, value IRI)
    percentage: float

    def __post_init__(self):
        _check_ident(self.subset_id, "subset_id")
        if not self.defined_by:
            raise ValidationError(f"subset {self.subset_id!r} needs >= 1 defining pair")
        _check_finite(self.percentage, "subset percentage")
        if not (0 <= self.percentage <= 100):
            raise ValidationError(
                f"subset {self.subset_id!r} percentage must be in [0, 100], "
                f"got {self.percentage}"
            )


@dataclass(frozen=True)
class StudyArmRecord:
    arm_id: str
    kind: ArmKind
    population_size: int
    characteristics: tuple[CharacteristicValue, ...] = ()
    subsets: tuple[SubsetRecord, ...] = ()
    notes: Optional[str] = None  # free-text arm descriptors (dosage, titration)

    def __post_init__(self):
        _check_ident(self.arm_id, "arm_id")
        if self.population_size < 0:
            raise ValidationError(
                f"arm {self.arm_id!r}: population_size must be >= 0, "
                f"got {self.population_size}"
            )
        ids = [s.subset_id for s in self.subsets]
        if len(ids) != len(set(ids)):
            raise ValidationError(f"arm {self.arm_id!r}: duplicate subset ids")


@dataclass(frozen=True)
class StudyRecord:
    study_id: str
    title: str
    arms: tuple[StudyArmRecord, ...]
    registry_link: Optional[str] = None

    def __post_init__(self):
        _check_ident(self.study_id, "study_id")
        if not self.arms:
            raise ValidationError(f"study {self.study_id!r} needs >= 1 arm")
        ids = [a.arm_id for a in self.arms]
        if len(ids) != len(set(ids)):
            raise ValidationError(f"study {self.study_id!r}: duplicate arm ids")

    @property
    def cohort_size(self) -> int:
        """Total enrolled subjects: the sum of arm population sizes."""
        return sum(a.population_size for a in self.arms)
