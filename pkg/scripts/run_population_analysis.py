#!/usr/bin/env python3
"""Run the three population-analysis queries over the fixture corpus.

Prints one row per scenario: question, matched count, percentage. Equivalent
CLI invocations are shown so results can be reproduced outside this script.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from cohortkg.drugs import GUANIDINES
from cohortkg.ingest import build_corpus_graph, load_corpus
from cohortkg.labels import SIO_AGE_IRI, VALUES
from cohortkg.queries import (
    BoundKind,
    FeatureCriterion,
    HasSubsetWith,
    Op,
    StatisticBound,
    study_limitation,
    study_match,
    study_quality,
)


def main() -> None:
    corpus = ROOT / "fixtures" / "corpus"
    graph = build_corpus_graph(load_corpus(corpus)).freeze()

    match = study_match(
        graph,
        [FeatureCriterion(
            HasSubsetWith(frozenset({VALUES["male"], VALUES["african american"]}))
        )],
    )
    limitation = study_limitation(
        graph,
        FeatureCriterion(
            StatisticBound(BoundKind.UPPER_BOUND, Op.LT, 70.0), SIO_AGE_IRI
        ),
    )
    quality = study_quality(graph, 1000, GUANIDINES, 1 / 3)

    rows = [
        ("study match", match),
        ("study limitation", limitation),
        ("study quality", quality),
    ]
    width = max(len(r.question) for _, r in rows)
    print(f"{'scenario':<18} {'question':<{width}}  matched  pct")
    for name, report in rows:
        print(
            f"{name:<18} {report.question:<{width}}  "
            f"{report.matched_count:>3}/{report.total_count:<3}  "
            f"{report.percentage:5.1f}%"
        )
    print()
    print("reproduce with:")
    print('  cohortkg query match --corpus fixtures/corpus --criteria '
          '\'{"criteria":[{"test":{"type":"has_subset_with",'
          '"values":["Male","African American"]}}]}\'')
    print('  cohortkg query limitation --corpus fixtures/corpus --criteria '
          '\'{"subgroup":{"characteristic":"Age","test":{"type":"statistic_bound",'
          '"which":"upper_bound","op":"<","threshold":70}}}\'')
    print(f"  cohortkg query quality --corpus fixtures/corpus --min-cohort 1000 "
          f"--drug-family {GUANIDINES} --arm-fraction 0.3333")


if __name__ == "__main__":
    main()
