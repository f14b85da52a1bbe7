"""Bundled drug class hierarchy used for family-closure queries.

A deliberately small tree: enough depth for subclass-closure queries over
antidiabetic and cardiovascular agents. ``vocabulary_graph`` renders it as an
ontology graph (owl:Class + rdfs:subClassOf + rdfs:label) that the subset
extractor and the quality query consume.
"""

from __future__ import annotations

from .graph import Graph, Iri, string
from .labels import CharacteristicDef
from .records import Persistence
from .vocab import OWL_CLASS, RDF_TYPE, RDFS_LABEL, RDFS_SUBCLASS_OF, SCO_D

# (class local name, parent local name, human label)
HIERARCHY: tuple[tuple[str, str | None, str], ...] = (
    ("Drug", None, "drug"),
    ("AntidiabeticAgent", "Drug", "antidiabetic agent"),
    ("Guanidines", "AntidiabeticAgent", "guanidines"),
    ("Biguanide", "Guanidines", "biguanide"),
    ("Metformin", "Biguanide", "metformin"),
    ("Phenformin", "Biguanide", "phenformin"),
    ("Sulfonylurea", "AntidiabeticAgent", "sulfonylurea"),
    ("Glyburide", "Sulfonylurea", "glyburide"),
    ("Glimepiride", "Sulfonylurea", "glimepiride"),
    ("Gliclazide", "Sulfonylurea", "gliclazide"),
    ("Sglt2Inhibitor", "AntidiabeticAgent", "SGLT2 inhibitor"),
    ("Empagliflozin", "Sglt2Inhibitor", "empagliflozin"),
    ("Canagliflozin", "Sglt2Inhibitor", "canagliflozin"),
    ("Glp1ReceptorAgonist", "AntidiabeticAgent", "GLP-1 receptor agonist"),
    ("Liraglutide", "Glp1ReceptorAgonist", "liraglutide"),
    ("Exenatide", "Glp1ReceptorAgonist", "exenatide"),
    ("Thiazolidinedione", "AntidiabeticAgent", "thiazolidinedione"),
    ("Pioglitazone", "Thiazolidinedione", "pioglitazone"),
    ("Rosiglitazone", "Thiazolidinedione", "rosiglitazone"),
    ("InsulinTherapy", "AntidiabeticAgent", "insulin therapy"),
    ("InsulinGlargine", "InsulinTherapy", "insulin glargine"),
    ("InsulinLispro", "InsulinTherapy", "insulin lispro"),
    ("CardiovascularAgent", "Drug", "cardiovascular agent"),
    ("AceInhibitor", "CardiovascularAgent", "ACE inhibitor"),
    ("Ramipril", "AceInhibitor", "ramipril"),
    ("Lisinopril", "AceInhibitor", "lisinopril"),
    ("AngiotensinReceptorBlocker", "CardiovascularAgent", "angiotensin receptor blocker"),
    ("Telmisartan", "AngiotensinReceptorBlocker", "telmisartan"),
    ("Losartan", "AngiotensinReceptorBlocker", "losartan"),
    ("Statin", "CardiovascularAgent", "statin"),
    ("Atorvastatin", "Statin", "atorvastatin"),
    ("Simvastatin", "Statin", "simvastatin"),
    ("BetaBlocker", "CardiovascularAgent", "beta blocker"),
    ("Metoprolol", "BetaBlocker", "metoprolol"),
    ("Diuretic", "CardiovascularAgent", "diuretic"),
    ("Hydrochlorothiazide", "Diuretic", "hydrochlorothiazide"),
)


def drug_iri(name: str) -> str:
    return SCO_D + name


GUANIDINES = drug_iri("Guanidines")

# Row labels for baseline-medication and assigned-treatment table rows.
DRUG_DEFS: dict[str, CharacteristicDef] = {
    label.lower(): CharacteristicDef(label, drug_iri(name), "drug", Persistence.PROPERTY)
    for name, _, label in HIERARCHY
}


def vocabulary_graph() -> Graph:
    """The drug hierarchy as an ontology graph."""
    g = Graph()
    for name, parent, label in HIERARCHY:
        cls = Iri(drug_iri(name))
        g.add(cls, RDF_TYPE, OWL_CLASS)
        if parent is not None:
            g.add(cls, RDFS_SUBCLASS_OF, Iri(drug_iri(parent)))
        g.add(cls, RDFS_LABEL, string(label))
    return g
