#!/usr/bin/env python3
"""Regenerate the synthetic fixture corpus under fixtures/.

The corpus is engineered so the three population-analysis queries land on
fixed percentages over 20 studies and 21 arms:

- 15 of 20 studies carry a Male + African American subset       -> 75.0%
- 10 of 21 arms have an age upper bound (mean + 2 sd, or q3)
  below 70                                                      -> 47.619%
- exactly 1 of 20 studies has cohort >= 1000, a guanidines-family
  intervention, and that arm >= 1/3 of the cohort               -> 5.0%

Characteristic rows total 360 (18 arms x 17 rows, 2 arms x 20, 1 arm x 14).
The manifest records these engineered truths independently of the query
engine: matched sets below are derived from this table by plain arithmetic.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

sys.path.insert(0, str(ROOT / "src"))

GUANIDINE_DRUGS = {"Metformin", "Phenformin"}
GUANIDINE_FAMILY = "https://w3id.org/sco/drugs#Guanidines"

MAA_SUBSET = [{"label": "Sex", "value": "Male"}, {"label": "Race", "value": "African American"}]


def mean_sd(label, mean, sd, unit=None):
    row = {"label": label, "statistic": {"type": "mean_sd", "mean": mean, "sd": sd}}
    if unit:
        row["unit"] = unit
    return row


def median_iqr(label, median, q1, q3):
    return {"label": label, "statistic": {"type": "median_iqr", "median": median, "q1": q1, "q3": q3}}


def pct(label, value):
    return {"label": label, "statistic": {"type": "percentage", "value": value}}


def standard_rows(age, bmi, sbp, dbp, hba1c, glucose, tc, ldl, hdl, tg, creat,
                  duration, male, smoker, htn, drug_row, baseline_row,
                  drop=(), extra=()):
    rows = [
        age,
        mean_sd("BMI", *bmi),
        mean_sd("Systolic BP", *sbp),
        mean_sd("Diastolic BP", *dbp),
        mean_sd("HbA1c", *hba1c),
        glucose,
        mean_sd("Total cholesterol", *tc),
        mean_sd("LDL cholesterol", *ldl),
        mean_sd("HDL cholesterol", *hdl),
        median_iqr("Triglycerides", *tg),
        mean_sd("Serum creatinine", *creat),
        mean_sd("Diabetes duration", *duration),
        pct("Male", male),
        pct("Current smoker", smoker),
        pct("Hypertension", htn),
        drug_row,
        baseline_row,
    ]
    rows = [r for r in rows if r["label"] not in drop]
    rows.extend(extra)
    return rows


# (study_id, title, registry, arm specs)
# arm spec: (arm_id, kind, size, age_row, drug, baseline, facet stats..., subsets, extra rows)
def build_studies():
    studies = []

    ramipril_rows = standard_rows(
        age=mean_sd("Age", 66.4, 7.2, unit="year"),
        bmi=(28.1, 4.3), sbp=(141.8, 17.4), dbp=(82.1, 9.6), hba1c=(7.4, 1.5),
        glucose=mean_sd("Fasting glucose", 148.0, 38.5),
        tc=(186.4, 41.2), ldl=(111.8, 34.5), hdl=(45.9, 12.0),
        tg=(141.0, 102.0, 196.0), creat=(1.06, 0.27), duration=(9.8, 6.4),
        male=72.7, smoker=12.6, htn=68.9,
        drug_row=pct("Ramipril", 100),
        baseline_row=pct("Atorvastatin", 46.2),
        extra=[
            mean_sd("Weight", 81.3, 15.9),
            pct("Cardiovascular disease", 74.5),
            pct("Telmisartan", 2.1),
        ],
    )
    telmisartan_rows = standard_rows(
        age=mean_sd("Age", 66.3, 7.3),
        bmi=(28.2, 4.4), sbp=(141.3, 17.2), dbp=(81.9, 9.8), hba1c=(7.5, 1.6),
        glucose=mean_sd("Fasting glucose", 149.5, 39.0),
        tc=(185.9, 40.8), ldl=(111.2, 34.1), hdl=(46.1, 12.2),
        tg=(143.0, 104.0, 199.0), creat=(1.07, 0.28), duration=(10.1, 6.6),
        male=73.1, smoker=12.2, htn=69.4,
        drug_row=pct("Telmisartan", 100),
        baseline_row=pct("Atorvastatin", 44.8),
        extra=[
            mean_sd("Weight", 81.9, 16.2),
            pct("Cardiovascular disease", 75.1),
            pct("Ramipril", 2.4),
        ],
    )
    studies.append(
        {
            "study_id": "TelmisartanRamipril",
            "title": "Telmisartan compared with ramipril in subjects at high vascular risk",
            "registry_link": "https://clinicaltrials.gov/study/NCT00000101",
            "arms": [
                {
                    "arm_id": "Ramipril",
                    "kind": "intervention",
                    "population_size": 8576,
                    "characteristics": ramipril_rows,
                    "subsets": [
                        {"subset_id": "MaleAfricanAmerican", "defined_by": MAA_SUBSET, "percentage": 12.0},
                    ],
                },
                {
                    "arm_id": "Telmisartan",
                    "kind": "intervention",
                    "population_size": 8542,
                    "characteristics": telmisartan_rows,
                    "subsets": [
                        {
                            "subset_id": "FemaleAsian",
                            "defined_by": [
                                {"label": "Sex", "value": "Female"},
                                {"label": "Race", "value": "Asian"},
                            ],
                            "percentage": 9.0,
                        },
                    ],
                },
            ],
        }
    )

    # single-arm studies: (study_id, title, registry, kind, size,
    #   age spec ("m", mean, sd) or ("q", median, q1, q3),
    #   assigned drug, baseline med + pct, subsets, dropped rows)
    singles = [
        ("EmpaHeartGuard", "Empagliflozin and heart failure admissions in type 2 diabetes",
         "https://clinicaltrials.gov/study/NCT00000102", "intervention", 2100,
         ("m", 56.4, 5.2), "Empagliflozin", ("Metoprolol", 32.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 14.5),
          ("Female", [{"label": "Sex", "value": "Female"}], 41.0)], ()),
        ("GlarSafe", "Long-term safety of insulin glargine titration",
         "https://clinicaltrials.gov/study/NCT00000103", "intervention", 5400,
         ("m", 63.5, 8.8), "Insulin glargine", ("Simvastatin", 38.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 17.0)], ()),
        ("MetSmallStart", "Early glimepiride initiation in newly diagnosed diabetes",
         None, "intervention", 480,
         ("m", 52.0, 6.5), "Glimepiride", ("Metformin", 58.0),
         [("Male", [{"label": "Sex", "value": "Male"}], 54.0)], ()),
        ("MetforminOutcomes", "Metformin monotherapy and macrovascular outcomes",
         "https://clinicaltrials.gov/study/NCT00000105", "intervention", 4200,
         ("m", 61.2, 6.5), "Metformin", ("Lisinopril", 29.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 15.5)], ()),
        ("LiraCardio", "Liraglutide and cardiovascular risk markers",
         "https://clinicaltrials.gov/study/NCT00000106", "intervention", 940,
         ("m", 57.1, 5.8), "Liraglutide", ("Metformin", 63.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 11.0)], ()),
        ("StatinShield", "High-dose atorvastatin in diabetic dyslipidemia",
         "https://clinicaltrials.gov/study/NCT00000107", "intervention", 1500,
         ("m", 64.0, 8.1), "Atorvastatin", ("Insulin glargine", 24.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 13.0)], ()),
        ("GliclaCompare", "Gliclazide as active control in glycemic management",
         None, "control", 520,
         ("q", 58.0, 52.0, 66.0), "Gliclazide", ("Hydrochlorothiazide", 18.0),
         [("AfricanAmerican", [{"label": "Race", "value": "African American"}], 11.0)], ()),
        ("MetforminEarly", "Metformin in early type 2 diabetes with preserved renal function",
         "https://clinicaltrials.gov/study/NCT00000109", "intervention", 850,
         ("m", 60.3, 5.1), "Metformin", ("Losartan", 21.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 6.0)], ()),
        ("PioBalance", "Pioglitazone and glycemic durability",
         "https://clinicaltrials.gov/study/NCT00000110", "intervention", 610,
         ("m", 54.8, 7.0), "Pioglitazone", ("Simvastatin", 27.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 16.5)], ()),
        ("LosartanRenal", "Losartan for nephropathy in type 2 diabetes",
         "https://clinicaltrials.gov/study/NCT00000111", "intervention", 760,
         ("m", 62.8, 7.7), "Losartan", ("Insulin lispro", 19.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 18.0)], ()),
        ("CanaGlucose", "Canagliflozin dosing and fasting glucose control",
         None, "intervention", 890,
         ("m", 55.6, 6.4), "Canagliflozin", ("Metoprolol", 23.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 10.5)], ()),
        ("MetforminSenior", "Metformin tolerability in older adults",
         "https://clinicaltrials.gov/study/NCT00000113", "intervention", 640,
         ("m", 68.9, 6.2), "Metformin", ("Atorvastatin", 31.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 8.5)], ()),
        ("ExenaLipid", "Exenatide effects on postprandial lipidemia",
         None, "intervention", 450,
         ("m", 53.9, 7.2), "Exenatide", ("Simvastatin", 26.0),
         [("FemaleAsian",
           [{"label": "Sex", "value": "Female"}, {"label": "Race", "value": "Asian"}], 22.0)], ()),
        ("GlyburideCompare", "Glyburide as comparator in add-on therapy",
         "https://clinicaltrials.gov/study/NCT00000115", "control", 700,
         ("q", 66.0, 60.0, 74.0), "Glyburide", ("Ramipril", 17.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 14.0)], ()),
        ("LisinoPress", "Lisinopril and blood pressure targets in diabetes",
         "https://clinicaltrials.gov/study/NCT00000116", "intervention", 980,
         ("m", 59.2, 4.9), "Lisinopril", ("Gliclazide", 35.0),
         [], ()),
        ("PhenforminLegacy", "Phenformin historical cohort re-analysis",
         None, "intervention", 920,
         ("m", 63.3, 7.4), "Phenformin", ("Hydrochlorothiazide", 15.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 9.5)], ()),
        ("RosiCardia", "Rosiglitazone and cardiac function monitoring",
         "https://clinicaltrials.gov/study/NCT00000118", "intervention", 830,
         ("m", 56.7, 6.0), "Rosiglitazone", ("Lisinopril", 22.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 12.5)], ()),
        ("LipidCareView", "Simvastatin adherence in routine diabetes care",
         "https://clinicaltrials.gov/study/NCT00000119", "intervention", 560,
         ("m", 61.7, 7.9), "Simvastatin", ("Metformin", 49.0),
         [("MaleAfricanAmerican", MAA_SUBSET, 13.5)],
         ("Systolic BP", "HbA1c", "Fasting glucose")),
        ("MetoHeartRate", "Metoprolol and resting heart rate in diabetic hypertension",
         None, "intervention", 905,
         ("m", 57.4, 5.5), "Metoprolol", ("Exenatide", 12.0),
         [("White", [{"label": "Race", "value": "White"}], 83.0)], ()),
    ]

    # deterministic per-study variation for the remaining row values
    for i, (sid, title, registry, kind, size, age_spec, drug, baseline, subsets, drop) in enumerate(singles):
        v = i + 1
        if age_spec[0] == "m":
            age_row = mean_sd("Age", age_spec[1], age_spec[2])
            age_ub = age_spec[1] + 2 * age_spec[2]
        else:
            age_row = median_iqr("Age", age_spec[1], age_spec[2], age_spec[3])
            age_ub = age_spec[3]
        rows = standard_rows(
            age=age_row,
            bmi=(27.0 + 0.4 * v, 3.5 + 0.05 * v),
            sbp=(126.0 + 1.2 * v, 12.0 + 0.3 * v),
            dbp=(74.0 + 0.6 * v, 7.5 + 0.1 * v),
            hba1c=(6.8 + 0.12 * v, 0.9 + 0.03 * v),
            glucose=(
                median_iqr("Fasting glucose", 138.0 + 2 * v, 118.0 + 2 * v, 170.0 + 2 * v)
                if sid in ("GlarSafe", "LosartanRenal")
                else mean_sd("Fasting glucose", 132.0 + 2.5 * v, 28.0 + 0.5 * v)
            ),
            tc=(152.0 + 2.8 * v, 30.0 + 0.6 * v),
            ldl=(84.0 + 2.2 * v, 22.0 + 0.5 * v),
            hdl=(38.0 + 0.7 * v, 8.0 + 0.2 * v),
            tg=(112.0 + 3 * v, 84.0 + 3 * v, 158.0 + 3 * v),
            creat=(0.82 + 0.02 * v, 0.18 + 0.004 * v),
            duration=(4.5 + 0.5 * v, 2.8 + 0.15 * v),
            male=40.0 + 1.5 * v,
            smoker=12.0 + 0.8 * v,
            htn=38.0 + 2.2 * v,
            drug_row=pct(drug, 100),
            baseline_row=pct(baseline[0], baseline[1]),
            drop=drop,
        )
        studies.append(
            {
                "study_id": sid,
                "title": title,
                **({"registry_link": registry} if registry else {}),
                "arms": [
                    {
                        "arm_id": f"{sid}Main",
                        "kind": kind,
                        "population_size": size,
                        "characteristics": rows,
                        "subsets": [
                            {"subset_id": sub_id, "defined_by": pairs, "percentage": p}
                            for sub_id, pairs, p in subsets
                        ],
                        "_age_upper_bound": age_ub,
                        "_drug": drug,
                        "_baseline": baseline[0],
                    }
                ],
            }
        )
    return studies


PATIENTS = [
    ("P001", "54.0", "31.2", "128.5", "7.9", "156.0"),
    ("P002", "61.5", "29.4", "135.0", "8.4", "172.5"),
    ("P003", "47.2", "34.8", "122.0", "9.1", "198.0"),
    ("P004", "58.9", "", "141.0", "7.2", "149.0"),
    ("P005", "66.4", "27.5", "138.5", "6.9", "131.0"),
    ("P006", "72.3", "26.1", "147.5", "7.6", "160.5"),
    ("P007", "78.1", "24.9", "152.0", "8.0", "175.0"),
    ("P008", "50.6", "36.4", "119.5", "9.8", "210.0"),
    ("P009", "63.0", "30.0", "133.0", "7.1", "142.0"),
    # exactly the Ramipril arm facet centers, for the flat-polygon check
    ("P010", "66.4", "28.1", "141.8", "7.4", "148.0"),
]


def derive_manifest(studies):
    """Engineered truths, derived from the table by plain arithmetic."""
    maa = []
    arms_below_70 = []
    quality = []
    total_arms = 0
    total_chars = 0
    total_subsets = 0
    for study in studies:
        sid = study["study_id"]
        cohort = sum(a["population_size"] for a in study["arms"])
        has_maa = False
        quality_arms = []
        for arm in study["arms"]:
            total_arms += 1
            total_chars += len(arm["characteristics"])
            total_subsets += len(arm.get("subsets", []))
            for sub in arm.get("subsets", []):
                labels = {(p["label"], p["value"]) for p in sub["defined_by"]}
                if {("Sex", "Male"), ("Race", "African American")} <= labels:
                    has_maa = True
            if "_age_upper_bound" in arm:
                ub = arm["_age_upper_bound"]
            else:
                age = next(c for c in arm["characteristics"] if c["label"] == "Age")
                stat = age["statistic"]
                ub = (
                    stat["mean"] + 2 * stat["sd"]
                    if stat["type"] == "mean_sd"
                    else stat["q3"]
                )
            if ub < 70:
                arms_below_70.append(arm["arm_id"])
            drugs_in_arm = {
                c["label"] for c in arm["characteristics"]
            } & (GUANIDINE_DRUGS | {"Biguanide", "Guanidines"})
            if drugs_in_arm and arm["population_size"] >= cohort / 3:
                quality_arms.append(arm["arm_id"])
        if has_maa:
            maa.append(sid)
        if cohort >= 1000 and quality_arms:
            quality.append(sid)
    n = len(studies)
    return {
        "studies": n,
        "arms": total_arms,
        "characteristics": total_chars,
        "subsets": total_subsets,
        "queries": {
            "match_male_african_american": {
                "matched_studies": sorted(maa),
                "matched_count": len(maa),
                "percentage": 100.0 * len(maa) / n,
            },
            "limitation_age_upper_bound_below_70": {
                "matched_arms": sorted(arms_below_70),
                "matched_count": len(arms_below_70),
                "total_arms": total_arms,
                "percentage": 100.0 * len(arms_below_70) / total_arms,
            },
            "quality_min1000_guanidines_one_third": {
                "drug_family": GUANIDINE_FAMILY,
                "matched_studies": sorted(quality),
                "matched_count": len(quality),
                "percentage": 100.0 * len(quality) / n,
            },
        },
    }


def main():
    studies = build_studies()
    corpus_dir = FIXTURES / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    for old in corpus_dir.glob("*.json"):
        old.unlink()
    for study in studies:
        clean = json.loads(json.dumps(study))
        for arm in clean["arms"]:
            for key in ("_age_upper_bound", "_drug", "_baseline"):
                arm.pop(key, None)
        path = corpus_dir / f"{study['study_id']}.json"
        path.write_text(json.dumps(clean, indent=2) + "\n", encoding="utf-8")

    manifest = derive_manifest(studies)
    (FIXTURES / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )

    with open(FIXTURES / "patients.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["patient_id", "age_years", "bmi_kg_m2", "sbp_mmhg", "hba1c_pct", "glucose_mg_dl"])
        writer.writerows(PATIENTS)

    from cohortkg.drugs import vocabulary_graph
    from cohortkg.turtle import save_turtle

    save_turtle(vocabulary_graph(), FIXTURES / "drug_vocabulary.ttl")

    print(f"{manifest['studies']} studies, {manifest['arms']} arms, "
          f"{manifest['characteristics']} characteristics, "
          f"{manifest['subsets']} subsets")
    for name, q in manifest["queries"].items():
        print(f"  {name}: {q['matched_count']} matched -> {q['percentage']:.4f}%")


if __name__ == "__main__":
    main()
