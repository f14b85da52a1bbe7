"""Mini-vocabulary: human row labels to class IRIs, units, and facets.

Known characteristic labels map to curated IRIs; unknown labels mint an IRI
in the extension namespace and warn, so ingestion never drops a row. The five
canonical facet features are the patient-record features the browser exposes.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Optional

from .records import Persistence
from .vocab import SCO, SCO_X, SIO

SIO_AGE_IRI = SIO + "Age"
SIO_YEAR_IRI = SIO + "Year"

UNITS: dict[str, str] = {
    "year": SIO_YEAR_IRI,
    "month": SCO + "Month",
    "kg/m2": SCO + "KilogramPerSquareMetre",
    "mmHg": SCO + "MillimetreOfMercury",
    "percent": SCO + "Percent",
    "mg/dL": SCO + "MilligramPerDecilitre",
    "mmol/L": SCO + "MillimolePerLitre",
    "kg": SCO + "Kilogram",
    "cm": SCO + "Centimetre",
    "mL/min": SCO + "MillilitrePerMinute",
}

UNIT_LABELS: dict[str, str] = {iri: label for label, iri in UNITS.items()}


@dataclass(frozen=True)
class CharacteristicDef:
    label: str
    iri: str
    family: str  # demographic | anthropometric | vital | lab | disease | drug
    persistence: Persistence = Persistence.ATTRIBUTE
    unit: Optional[str] = None  # default unit IRI


def _defs(*entries: CharacteristicDef) -> dict[str, CharacteristicDef]:
    return {e.label.lower(): e for e in entries}


CHARACTERISTICS: dict[str, CharacteristicDef] = _defs(
    CharacteristicDef("Age", SIO_AGE_IRI, "demographic", unit=UNITS["year"]),
    CharacteristicDef("Sex", SCO + "Sex", "demographic"),
    CharacteristicDef("Race", SCO + "Race", "demographic"),
    CharacteristicDef("Male", SCO + "Male", "demographic"),
    CharacteristicDef("Female", SCO + "Female", "demographic"),
    CharacteristicDef("BMI", SCO + "BodyMassIndex", "anthropometric", unit=UNITS["kg/m2"]),
    CharacteristicDef("Weight", SCO + "BodyWeight", "anthropometric", unit=UNITS["kg"]),
    CharacteristicDef("Height", SCO + "BodyHeight", "anthropometric", unit=UNITS["cm"]),
    CharacteristicDef(
        "Systolic BP", SCO + "SystolicBloodPressure", "vital", unit=UNITS["mmHg"]
    ),
    CharacteristicDef(
        "Diastolic BP", SCO + "DiastolicBloodPressure", "vital", unit=UNITS["mmHg"]
    ),
    CharacteristicDef("HbA1c", SCO + "HbA1c", "lab", unit=UNITS["percent"]),
    CharacteristicDef(
        "Fasting glucose", SCO + "FastingPlasmaGlucose", "lab", unit=UNITS["mg/dL"]
    ),
    CharacteristicDef(
        "Total cholesterol", SCO + "TotalCholesterol", "lab", unit=UNITS["mg/dL"]
    ),
    CharacteristicDef("LDL cholesterol", SCO + "LdlCholesterol", "lab", unit=UNITS["mg/dL"]),
    CharacteristicDef("HDL cholesterol", SCO + "HdlCholesterol", "lab", unit=UNITS["mg/dL"]),
    CharacteristicDef("Triglycerides", SCO + "Triglycerides", "lab", unit=UNITS["mg/dL"]),
    CharacteristicDef(
        "Serum creatinine", SCO + "SerumCreatinine", "lab", unit=UNITS["mg/dL"]
    ),
    CharacteristicDef("eGFR", SCO + "EstimatedGfr", "lab", unit=UNITS["mL/min"]),
    CharacteristicDef(
        "Diabetes duration", SCO + "DiabetesDuration", "demographic", unit=UNITS["year"]
    ),
    CharacteristicDef("Current smoker", SCO + "CurrentSmoker", "demographic"),
    CharacteristicDef(
        "Hypertension", SCO + "Hypertension", "disease", Persistence.PROPERTY
    ),
    CharacteristicDef(
        "Cardiovascular disease",
        SCO + "CardiovascularDisease",
        "disease",
        Persistence.PROPERTY,
    ),
    CharacteristicDef(
        "Retinopathy", SCO + "Retinopathy", "disease", Persistence.PROPERTY
    ),
)

VALUES: dict[str, str] = {
    "male": SCO + "Male",
    "female": SCO + "Female",
    "african american": SCO + "AfricanAmerican",
    "asian": SCO + "Asian",
    "white": SCO + "White",
    "hispanic": SCO + "Hispanic",
}


@dataclass(frozen=True)
class FacetDef:
    key: str
    label: str
    iri: str
    unit: str  # unit IRI
    unit_label: str
    csv_column: str


FACETS: tuple[FacetDef, ...] = (
    FacetDef("age", "Age", SIO_AGE_IRI, UNITS["year"], "year", "age_years"),
    FacetDef("bmi", "BMI", SCO + "BodyMassIndex", UNITS["kg/m2"], "kg/m2", "bmi_kg_m2"),
    FacetDef(
        "sbp",
        "Systolic blood pressure",
        SCO + "SystolicBloodPressure",
        UNITS["mmHg"],
        "mmHg",
        "sbp_mmhg",
    ),
    FacetDef("hba1c", "HbA1c", SCO + "HbA1c", UNITS["percent"], "percent", "hba1c_pct"),
    FacetDef(
        "glucose",
        "Fasting glucose",
        SCO + "FastingPlasmaGlucose",
        UNITS["mg/dL"],
        "mg/dL",
        "glucose_mg_dl",
    ),
)

FACET_KEYS = tuple(f.key for f in FACETS)
FACETS_BY_KEY = {f.key: f for f in FACETS}


def _slug(label: str) -> str:
    words = re.findall(r"[A-Za-z0-9]+", label)
    if not words:
        raise ValueError(f"cannot mint an IRI from label {label!r}")
    return "".join(w[:1].upper() + w[1:] for w in words)


def resolve_characteristic(label: str) -> CharacteristicDef:
    """The definition for a row label, minting an extension IRI if unknown."""
    from .drugs import DRUG_DEFS

    key = label.strip().lower()
    if key in CHARACTERISTICS:
        return CHARACTERISTICS[key]
    if key in DRUG_DEFS:
        return DRUG_DEFS[key]
    warnings.warn(
        f"unknown characteristic label {label!r}; minting an extension IRI",
        stacklevel=2,
    )
    return CharacteristicDef(label, SCO_X + _slug(label), "extension")


def resolve_value(label: str) -> str:
    """The value class IRI for a categorical label, minted if unknown."""
    key = label.strip().lower()
    if key in VALUES:
        return VALUES[key]
    warnings.warn(
        f"unknown value label {label!r}; minting an extension IRI", stacklevel=2
    )
    return SCO_X + _slug(label)


def resolve_iri_or_label(text: str, *, value: bool = False) -> str:
    """Accept either a full IRI or a human label in query criteria."""
    if re.match(r"^[A-Za-z][A-Za-z0-9+.-]*://", text) or text.startswith("urn:"):
        return text
    if value:
        return resolve_value(text)
    return resolve_characteristic(text).iri
