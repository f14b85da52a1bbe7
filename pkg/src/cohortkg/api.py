"""HTTP JSON API over a loaded corpus: the model behind the faceted browser.

The corpus loads once at startup into a frozen graph; every request reads
through the shared CorpusView, so handling is stateless and identical
requests produce identical responses. All error responses are JSON
``{"error", "detail"}`` with the appropriate status code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import similarity as sim
from .corpus import CorpusView
from .drugs import vocabulary_graph
from .errors import (
    CohortKgError,
    InsufficientAxesError,
    NotFoundError,
    UnitError,
    ValidationError,
)
from .graph import Graph
from .ingest import build_corpus_graph, load_corpus
from .labels import FACETS
from .queries import criterion_from_dict, study_limitation, study_match, study_quality
from .turtle import load_turtle


@dataclass
class AppState:
    view: CorpusView
    patients: dict[str, sim.PatientRecord] = field(default_factory=dict)
    vocabulary: Optional[Graph] = None


def load_state(
    corpus_dir,
    patients_file=None,
    vocab_file=None,
) -> AppState:
    studies = load_corpus(corpus_dir)
    graph = build_corpus_graph(studies).freeze()
    patients: dict[str, sim.PatientRecord] = {}
    if patients_file is not None:
        patients = {p.patient_id: p for p in sim.load_patients(patients_file)}
    vocabulary = load_turtle(vocab_file) if vocab_file else vocabulary_graph()
    vocabulary.freeze()
    return AppState(CorpusView(graph), patients, vocabulary)


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        self.status = status
        self.error = error
        self.detail = detail


def _facets_payload(arm) -> list[dict]:
    covered = sim.arm_covered_features(arm)
    return [
        {
            "feature": facet.iri,
            "key": facet.key,
            "label": facet.label,
            "unit": facet.unit_label,
            "available": covered[facet.key],
        }
        for facet in FACETS
    ]


def _study_facets(study) -> list[dict]:
    # study-level availability = any arm reports it; the browser still works
    # arm by arm with the per-arm lists above
    merged = {f.key: False for f in FACETS}
    for arm in study.arms:
        covered = sim.arm_covered_features(arm)
        for key, ok in covered.items():
            merged[key] = merged[key] or ok
    return [
        {
            "feature": facet.iri,
            "key": facet.key,
            "label": facet.label,
            "unit": facet.unit_label,
            "available": merged[facet.key],
        }
        for facet in FACETS
    ]


def create_app(state: AppState, cors_origins: tuple[str, ...] = ("*",)) -> FastAPI:
    app = FastAPI(title="cohortkg", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    view = state.view

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"error": exc.error, "detail": exc.detail}
        )

    @app.exception_handler(CohortKgError)
    async def on_toolkit_error(request: Request, exc: CohortKgError):
        return JSONResponse(
            status_code=500, content={"error": "internal", "detail": str(exc)}
        )

    def get_study(study_id: str):
        try:
            return view.study(study_id)
        except NotFoundError as exc:
            raise ApiError(404, "not_found", str(exc)) from None

    def body_of(data, *fields):
        if not isinstance(data, dict):
            raise ApiError(400, "bad_request", "request body must be a JSON object")
        missing = [f for f in fields if f not in data]
        if missing:
            raise ApiError(
                400, "bad_request", f"missing field(s): {', '.join(missing)}"
            )
        return data

    @app.get("/api/studies")
    def list_studies():
        return [
            {
                "study_id": s.study_id,
                "title": s.title,
                "registry_link": s.registry_link,
                "arm_count": len(s.arms),
                "cohort_size": s.cohort_size,
            }
            for s in view.studies
        ]

    @app.get("/api/studies/{study_id}/facets")
    def study_facets(study_id: str):
        study = get_study(study_id)
        return {
            "study_id": study.study_id,
            "arms": [
                {
                    "arm_id": a.arm_id,
                    "kind": a.kind,
                    "population_size": a.population_size,
                    "facets": _facets_payload(a),
                }
                for a in study.arms
            ],
            "facets": _study_facets(study),
        }

    @app.get("/api/patients")
    def list_patients():
        out = []
        for pid in sorted(state.patients):
            patient = state.patients[pid]
            features = {}
            for facet in FACETS:
                value = patient.features.get(facet.iri)
                if value is not None:
                    features[facet.key] = value.value
            out.append({"patient_id": pid, "features": features})
        return out

    @app.post("/api/similarity")
    async def similarity_endpoint(request: Request):
        data = body_of(await _json_body(request), "study_id", "arm_id", "patient_id")
        study = get_study(str(data["study_id"]))
        arm_id = str(data["arm_id"])
        if not any(a.arm_id == arm_id for a in study.arms):
            raise ApiError(
                404, "not_found", f"unknown arm {arm_id!r} in study {study.study_id!r}"
            )
        patient = state.patients.get(str(data["patient_id"]))
        if patient is None:
            raise ApiError(404, "not_found", f"unknown patient: {data['patient_id']!r}")
        features = data.get("features")
        if features is not None:
            if not isinstance(features, list) or not all(
                isinstance(f, str) for f in features
            ):
                raise ApiError(400, "bad_request", "features must be a list of strings")
            arm = view.arm(study.study_id, arm_id)
            covered = sim.arm_covered_features(arm)
            unknown = [f for f in features if f not in covered]
            if unknown:
                raise ApiError(
                    422,
                    "unknown_feature",
                    f"unknown feature(s) {', '.join(unknown)}; "
                    f"valid keys: {', '.join(sorted(covered))}",
                )
            unavailable = [f for f in features if not covered[f]]
            if unavailable:
                available = sorted(k for k, ok in covered.items() if ok)
                raise ApiError(
                    422,
                    "unavailable_feature",
                    f"feature(s) not reported by arm {arm_id!r}: "
                    f"{', '.join(unavailable)}; available: {', '.join(available)}",
                )
        try:
            report = sim.compare(view, study.study_id, arm_id, patient, features)
            series = sim.star_plot_series(report)
        except InsufficientAxesError as exc:
            raise ApiError(422, "insufficient_axes", str(exc)) from None
        except UnitError as exc:
            raise ApiError(422, "unit_mismatch", str(exc)) from None
        return {"report": report.to_dict(), "plot": series.to_dict()}

    @app.post("/api/query/match")
    async def query_match(request: Request):
        data = body_of(await _json_body(request), "criteria")
        if not isinstance(data["criteria"], list) or not data["criteria"]:
            raise ApiError(400, "bad_request", "criteria must be a non-empty list")
        try:
            criteria = [criterion_from_dict(c) for c in data["criteria"]]
            report = study_match(
                view, criteria, conjunctive=bool(data.get("conjunctive", True))
            )
        except ValidationError as exc:
            raise ApiError(400, "bad_request", str(exc)) from None
        return report.to_dict()

    @app.post("/api/query/limitation")
    async def query_limitation(request: Request):
        data = body_of(await _json_body(request), "subgroup")
        try:
            subgroup = criterion_from_dict(data["subgroup"])
            report = study_limitation(
                view,
                subgroup,
                underrep_threshold=float(data.get("underrep_threshold", 10.0)),
            )
        except (ValidationError, ValueError) as exc:
            raise ApiError(400, "bad_request", str(exc)) from None
        return report.to_dict()

    @app.post("/api/query/quality")
    async def query_quality(request: Request):
        data = body_of(
            await _json_body(request), "min_cohort", "drug_family", "arm_fraction"
        )
        try:
            report = study_quality(
                view,
                min_cohort=int(data["min_cohort"]),
                drug_family=str(data["drug_family"]),
                arm_fraction=float(data["arm_fraction"]),
                vocabulary=state.vocabulary,
            )
        except (ValidationError, ValueError) as exc:
            raise ApiError(400, "bad_request", str(exc)) from None
        return report.to_dict()

    async def _json_body(request: Request):
        try:
            return await request.json()
        except Exception:
            raise ApiError(400, "bad_request", "request body is not valid JSON") from None

    return app


def serve(
    corpus_dir,
    patients_file=None,
    vocab_file=None,
    host: str = "127.0.0.1",
    port: int = 8080,
    cors_origins: tuple[str, ...] = ("*",),
) -> None:
    import uvicorn

    state = load_state(corpus_dir, patients_file, vocab_file)
    app = create_app(state, cors_origins)
    print(
        f"cohortkg: serving {len(state.view)} studies, "
        f"{len(state.patients)} patients on http://{host}:{port}"
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")
