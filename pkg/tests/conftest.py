import json
from pathlib import Path

import pytest

from cohortkg.corpus import CorpusView
from cohortkg.ingest import build_corpus_graph, load_corpus
from cohortkg.similarity import load_patients

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def manifest() -> dict:
    return json.loads((FIXTURES / "manifest.json").read_text())


@pytest.fixture(scope="session")
def studies():
    return load_corpus(FIXTURES / "corpus")


@pytest.fixture(scope="session")
def corpus_graph(studies):
    return build_corpus_graph(studies).freeze()


@pytest.fixture(scope="session")
def corpus_view(corpus_graph):
    return CorpusView(corpus_graph)


@pytest.fixture(scope="session")
def patients():
    return {p.patient_id: p for p in load_patients(FIXTURES / "patients.csv")}
