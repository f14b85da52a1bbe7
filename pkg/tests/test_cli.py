import json

from cohortkg.cli import EXIT_IO, EXIT_VALIDATION, main
from cohortkg.drugs import GUANIDINES, drug_iri
from cohortkg.isomorphism import isomorphic
from cohortkg.turtle import load_turtle

CORPUS = "fixtures/corpus"
PATIENTS = "fixtures/patients.csv"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ingest_summary_line(capsys, tmp_path, corpus_graph):
    out_file = tmp_path / "corpus.ttl"
    code, out, _ = run(capsys, "ingest", "--corpus", CORPUS, "--out", str(out_file))
    assert code == 0
    assert "20 studies, 21 arms" in out
    written = load_turtle(out_file)
    assert isomorphic(written, corpus_graph)


def test_ingest_json_summary(capsys, tmp_path):
    out_file = tmp_path / "corpus.ttl"
    code, out, _ = run(
        capsys, "ingest", "--corpus", CORPUS, "--out", str(out_file), "--json"
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["studies"] == 20
    assert summary["arms"] == 21
    assert summary["characteristics"] == 360


def test_ingest_missing_corpus_is_validation_error(capsys, tmp_path):
    code, _, err = run(
        capsys, "ingest", "--corpus", str(tmp_path / "nowhere"), "--out",
        str(tmp_path / "x.ttl"),
    )
    assert code == EXIT_VALIDATION
    assert "error" in err


def test_query_quality_report(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "query", "quality",
        "--corpus", CORPUS,
        "--min-cohort", "1000",
        "--drug-family", GUANIDINES,
        "--arm-fraction", "0.3333",
        "--out", str(out_file),
    )
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["percentage"] == 5.0
    assert report["matches"][0]["study_id"] == "MetforminOutcomes"
    assert "5.0%" in out


def test_query_match_inline_criteria(capsys, tmp_path):
    criteria = json.dumps(
        {"criteria": [{"test": {"type": "has_subset_with", "values": ["Male", "African American"]}}]}
    )
    code, out, _ = run(
        capsys, "query", "match", "--corpus", CORPUS, "--criteria", criteria, "--json"
    )
    assert code == 0
    assert json.loads(out)["percentage"] == 75.0


def test_query_limitation_criteria_file(capsys, tmp_path):
    criteria_file = tmp_path / "crit.json"
    criteria_file.write_text(
        json.dumps(
            {
                "subgroup": {
                    "characteristic": "Age",
                    "test": {
                        "type": "statistic_bound",
                        "which": "upper_bound",
                        "op": "<",
                        "threshold": 70,
                    },
                }
            }
        )
    )
    code, out, _ = run(
        capsys,
        "query", "limitation", "--corpus", CORPUS,
        "--criteria", str(criteria_file), "--json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["matched_count"] == 10
    assert report["total_count"] == 21


def test_query_quality_bad_fraction(capsys):
    code, _, err = run(
        capsys,
        "query", "quality", "--corpus", CORPUS,
        "--drug-family", GUANIDINES, "--arm-fraction", "0",
    )
    assert code == EXIT_VALIDATION
    assert "arm_fraction" in err


def test_similarity_command(capsys):
    code, out, _ = run(
        capsys,
        "similarity", "--corpus", CORPUS, "--patients", PATIENTS,
        "--study", "TelmisartanRamipril", "--arm", "Ramipril",
        "--patient", "P010", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["overall"] == 1.0
    assert payload["plot"]["patient"] == [0.5] * 5


def test_similarity_unknown_patient(capsys):
    code, _, err = run(
        capsys,
        "similarity", "--corpus", CORPUS, "--patients", PATIENTS,
        "--study", "TelmisartanRamipril", "--arm", "Ramipril", "--patient", "P999",
    )
    assert code == EXIT_VALIDATION
    assert "P999" in err


def test_subset_command(capsys, tmp_path):
    out_file = tmp_path / "module.ttl"
    code, out, _ = run(
        capsys,
        "subset", "--source", "fixtures/drug_vocabulary.ttl",
        "--seed", drug_iri("Biguanide"), "--annotations", "--out", str(out_file),
    )
    assert code == 0
    # Biguanide + ancestors (Guanidines, AntidiabeticAgent, Drug) + children
    assert "retained 6 classes" in out
    module = load_turtle(out_file)
    assert len(module.match(None, None, None)) > 0


def test_subset_missing_source_is_io_error(capsys, tmp_path):
    code, _, err = run(
        capsys,
        "subset", "--source", str(tmp_path / "missing.ttl"),
        "--seed", drug_iri("Biguanide"), "--out", str(tmp_path / "m.ttl"),
    )
    assert code == EXIT_IO
