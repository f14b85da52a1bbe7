"""Patient-to-arm closeness scoring and star-plot series.

Each covered feature is compared on a standardized scale: z is the patient's
offset from the arm center in spreads (sd, or half the interquartile range),
closeness is the linear clamp max(0, 1 - |z|/2), and the plot radius maps
z in [-3, 3] onto [0, 1] so the arm center sits at the 0.5 reference ring.
These mappings are this toolkit's own convention, chosen so axes stay
interpretable and the coherence properties below hold exactly:

- shifting patient value and arm center together leaves z unchanged;
- rescaling value, center, and spread by one positive factor leaves z
  unchanged;
- closeness is 1 exactly at the arm center and never increases as |z| grows.

Features the arm does not report are never imputed; they are excluded from
the comparisons and from the overall score.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .corpus import ArmView, CharView, GraphOrView, as_view
from .errors import InsufficientAxesError, SchemaError, UnitError, ValidationError
from .labels import FACETS, FACETS_BY_KEY, UNIT_LABELS, UNITS

GLUCOSE_MG_PER_MMOL = 18.016

_CSV_HEADER = ["patient_id", "age_years", "bmi_kg_m2", "sbp_mmhg", "hba1c_pct", "glucose_mg_dl"]


@dataclass(frozen=True)
class FeatureValue:
    value: float
    unit: str  # unit IRI

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValidationError(f"feature value must be finite, got {self.value!r}")


@dataclass(frozen=True)
class PatientRecord:
    patient_id: str
    features: Mapping[str, FeatureValue]  # characteristic IRI -> value


@dataclass(frozen=True)
class FeatureComparison:
    feature: str  # facet key
    characteristic: str  # class IRI
    label: str
    unit: str  # unit label of the arm's native unit
    patient_value: float
    arm_center: float
    arm_spread: float
    z: float
    closeness: float
    radial: float
    spread_zero: bool = False

    def to_dict(self) -> dict:
        return {
            "feature": self.feature,
            "characteristic": self.characteristic,
            "label": self.label,
            "unit": self.unit,
            "patient_value": self.patient_value,
            "arm_center": self.arm_center,
            "arm_spread": self.arm_spread,
            "z": None if math.isinf(self.z) else self.z,
            "closeness": self.closeness,
            "radial": self.radial,
            "spread_zero": self.spread_zero,
        }


@dataclass
class SimilarityReport:
    patient_id: str
    study_id: str
    arm_id: str
    comparisons: list[FeatureComparison]
    covered_features: dict[str, bool]  # facet key -> arm reports it
    overall: float

    def to_dict(self) -> dict:
        return {
            "patient_id": self.patient_id,
            "study_id": self.study_id,
            "arm_id": self.arm_id,
            "comparisons": [c.to_dict() for c in self.comparisons],
            "covered_features": dict(self.covered_features),
            "overall": self.overall,
        }


@dataclass(frozen=True)
class Axis:
    label: str
    unit: str
    range_lo: float
    range_hi: float

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "unit": self.unit,
            "range_lo": self.range_lo,
            "range_hi": self.range_hi,
        }


@dataclass
class PlotSeries:
    axes: list[Axis]
    patient: list[float]
    reference: list[float]
    overall: float

    def to_dict(self) -> dict:
        return {
            "axes": [a.to_dict() for a in self.axes],
            "patient": list(self.patient),
            "reference": list(self.reference),
            "overall": self.overall,
        }


def standardized_offset(patient_value: float, center: float, spread: float) -> float:
    """z in spreads; infinite when the arm reports zero spread off-center."""
    if spread > 0:
        return (patient_value - center) / spread
    if patient_value == center:
        return 0.0
    return math.inf if patient_value > center else -math.inf


def closeness_from_z(z: float) -> float:
    if z == 0.0:
        return 1.0
    if math.isinf(z):
        return 0.0
    value = max(0.0, 1.0 - abs(z) / 2.0)
    # 1 - |z|/2 rounds to 1.0 for |z| below one ulp; keep 1.0 exclusive to z=0
    if value >= 1.0:
        value = math.nextafter(1.0, 0.0)
    return value


def radial_from_z(z: float) -> float:
    if math.isinf(z):
        return 1.0 if z > 0 else 0.0
    return min(1.0, max(0.0, (z + 3.0) / 6.0))


def _convert(value: float, from_unit: str, to_unit: str) -> float:
    """Unit conversion limited to year/month and mg/dL vs mmol/L."""
    if from_unit == to_unit:
        return value
    year, month = UNITS["year"], UNITS["month"]
    mgdl, mmoll = UNITS["mg/dL"], UNITS["mmol/L"]
    if (from_unit, to_unit) == (year, month):
        return value * 12.0
    if (from_unit, to_unit) == (month, year):
        return value / 12.0
    if (from_unit, to_unit) == (mmoll, mgdl):
        return value * GLUCOSE_MG_PER_MMOL
    if (from_unit, to_unit) == (mgdl, mmoll):
        return value / GLUCOSE_MG_PER_MMOL
    raise UnitError(
        f"no conversion from {UNIT_LABELS.get(from_unit, from_unit)} "
        f"to {UNIT_LABELS.get(to_unit, to_unit)}"
    )


def _center_spread(char: CharView) -> Optional[tuple[float, float]]:
    if char.mean is not None and char.sd is not None:
        return char.mean, char.sd
    if char.median is not None and char.q1 is not None and char.q3 is not None:
        return char.median, (char.q3 - char.q1) / 2.0
    return None


def arm_covered_features(arm: ArmView) -> dict[str, bool]:
    """Which canonical facet features the arm reports with a continuous statistic."""
    covered = {}
    for facet in FACETS:
        char = arm.characteristic(facet.iri)
        covered[facet.key] = char is not None and _center_spread(char) is not None
    return covered


def compare(
    source: GraphOrView,
    study_id: str,
    arm_id: str,
    patient: PatientRecord,
    features: Optional[Iterable[str]] = None,
) -> SimilarityReport:
    """Compare one patient against one arm on the requested facet features.

    ``features`` defaults to all five canonical facets; entries must be facet
    keys. Features the arm does not report are recorded as uncovered and
    excluded from the overall score, never imputed.
    """
    view = as_view(source)
    arm = view.arm(study_id, arm_id)
    requested = list(features) if features is not None else [f.key for f in FACETS]
    unknown = [k for k in requested if k not in FACETS_BY_KEY]
    if unknown:
        raise ValidationError(f"unknown facet feature(s): {', '.join(unknown)}")

    covered = arm_covered_features(arm)
    comparisons: list[FeatureComparison] = []
    total = 0.0
    for facet in FACETS:
        if facet.key not in requested or not covered[facet.key]:
            continue
        char = arm.characteristic(facet.iri)
        center, spread = _center_spread(char)
        feature = patient.features.get(facet.iri)
        if feature is None:
            continue
        arm_unit = char.unit or facet.unit
        value = _convert(feature.value, feature.unit, arm_unit)
        z = standardized_offset(value, center, spread)
        comparisons.append(
            FeatureComparison(
                feature=facet.key,
                characteristic=facet.iri,
                label=facet.label,
                unit=UNIT_LABELS.get(arm_unit, arm_unit),
                patient_value=value,
                arm_center=center,
                arm_spread=spread,
                z=z,
                closeness=closeness_from_z(z),
                radial=radial_from_z(z),
                spread_zero=spread == 0 and value != center,
            )
        )
        total += closeness_from_z(z)
    overall = total / len(comparisons) if comparisons else 0.0
    return SimilarityReport(
        patient_id=patient.patient_id,
        study_id=study_id,
        arm_id=arm_id,
        comparisons=comparisons,
        covered_features={k: covered[k] for k in requested},
        overall=overall,
    )


def star_plot_series(report: SimilarityReport) -> PlotSeries:
    """Axes, patient polygon, and the 0.5 arm reference ring for a star plot."""
    if len(report.comparisons) < 3:
        raise InsufficientAxesError(
            f"a star plot needs at least 3 covered features, got "
            f"{len(report.comparisons)}; fall back to a tabular comparison"
        )
    axes = [
        Axis(
            label=c.label,
            unit=c.unit,
            range_lo=c.arm_center - 2.0 * c.arm_spread,
            range_hi=c.arm_center + 2.0 * c.arm_spread,
        )
        for c in report.comparisons
    ]
    return PlotSeries(
        axes=axes,
        patient=[c.radial for c in report.comparisons],
        reference=[0.5] * len(report.comparisons),
        overall=report.overall,
    )


def load_patients(path) -> list[PatientRecord]:
    """Patient records from the documented CSV layout; empty cells are missing."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path.name}: empty patient file") from None
        if [h.strip() for h in header] != _CSV_HEADER:
            raise SchemaError(
                f"{path.name}: header must be {','.join(_CSV_HEADER)}"
            )
        records: list[PatientRecord] = []
        seen: set[str] = set()
        diagnostics: list[str] = []
        for row_no, row in enumerate(reader, start=2):
            if not any(cell.strip() for cell in row):
                continue
            patient_id = row[0].strip()
            if not patient_id:
                diagnostics.append(f"{path.name}: row {row_no}: empty patient_id")
                continue
            if patient_id in seen:
                diagnostics.append(
                    f"{path.name}: row {row_no}: duplicate patient_id {patient_id!r}"
                )
                continue
            seen.add(patient_id)
            features: dict[str, FeatureValue] = {}
            bad = False
            for facet, cell in zip(FACETS, row[1:6]):
                cell = cell.strip()
                if not cell:
                    continue
                try:
                    value = float(cell)
                    features[facet.iri] = FeatureValue(value, facet.unit)
                except (ValueError, ValidationError):
                    diagnostics.append(
                        f"{path.name}: row {row_no}, column {facet.csv_column}: "
                        f"not a number: {cell!r}"
                    )
                    bad = True
            if not bad:
                records.append(PatientRecord(patient_id, features))
        if diagnostics:
            raise SchemaError(
                f"{path.name}: {len(diagnostics)} invalid patient row(s)", diagnostics
            )
    return records
