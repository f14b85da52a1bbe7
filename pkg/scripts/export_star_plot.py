#!/usr/bin/env python3
"""Export a star-plot series for one patient against one study arm.

Writes the PlotSeries JSON the browser renders. Defaults compare patient
P001 with the Ramipril fixture arm; pass study, arm, and patient ids to
override:

    python3 scripts/export_star_plot.py [STUDY ARM PATIENT] [out.json]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from cohortkg.ingest import build_corpus_graph, load_corpus
from cohortkg.similarity import compare, load_patients, star_plot_series


def main() -> None:
    args = sys.argv[1:]
    study_id, arm_id, patient_id = (
        args[:3] if len(args) >= 3 else ("TelmisartanRamipril", "Ramipril", "P001")
    )
    out = Path(args[3]) if len(args) > 3 else None

    graph = build_corpus_graph(load_corpus(ROOT / "fixtures" / "corpus"))
    patients = {p.patient_id: p for p in load_patients(ROOT / "fixtures" / "patients.csv")}
    report = compare(graph, study_id, arm_id, patients[patient_id])
    series = star_plot_series(report)

    payload = json.dumps({"report": report.to_dict(), "plot": series.to_dict()}, indent=2)
    if out:
        out.write_text(payload + "\n", encoding="utf-8")
        print(f"wrote {out}")
    else:
        print(payload)
    print(
        f"\noverall closeness of {patient_id} to {study_id}/{arm_id}: "
        f"{report.overall:.3f}",
        file=sys.stderr,
    )


if __name__ == "__main__":
    main()
