"""Unified command-line entry point.

Subcommands: ingest, serve, query, similarity, subset. Exit codes: 0 on
success, 1 on validation problems (schema violations, bad criteria, unknown
ids), 2 on I/O problems (missing files, unparseable Turtle).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    CohortKgError,
    NotFoundError,
    SchemaError,
    TurtleSyntaxError,
    ValidationError,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _load_json_arg(text: str):
    """A criteria argument is either inline JSON or a path to a JSON file."""
    path = Path(text)
    if path.exists():
        return json.loads(path.read_text(encoding="utf-8"))
    return json.loads(text)


def _write_report(report_dict: dict, out: str | None, as_json: bool) -> None:
    payload = json.dumps(report_dict, indent=2)
    if out:
        Path(out).write_text(payload + "\n", encoding="utf-8")
    if as_json or not out:
        print(payload)
    else:
        print(
            f"matched {report_dict['matched_count']} of {report_dict['total_count']} "
            f"{report_dict['granularity']}(s): {report_dict['percentage']:.1f}%"
        )


def cmd_ingest(args) -> int:
    from .ingest import build_corpus_graph, corpus_stats, load_corpus
    from .turtle import save_turtle

    studies = load_corpus(args.corpus)
    graph = build_corpus_graph(studies)
    save_turtle(graph, args.out)
    stats = corpus_stats(studies)
    summary = (
        f"{stats['studies']} studies, {stats['arms']} arms, "
        f"{stats['characteristics']} characteristics, {len(graph)} triples -> {args.out}"
    )
    if args.json:
        print(json.dumps({**stats, "triples": len(graph), "out": str(args.out)}))
    else:
        print(summary)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .api import serve

    host, _, port_text = args.bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValidationError(f"--bind must be host:port, got {args.bind!r}")
    port = int(port_text)
    if not (1 <= port <= 65535):
        raise ValidationError(f"port must be in [1, 65535], got {port}")
    serve(
        args.corpus,
        patients_file=args.patients,
        vocab_file=args.vocab,
        host=host,
        port=port,
        cors_origins=tuple(args.cors_origin) if args.cors_origin else ("*",),
    )
    return EXIT_OK


def cmd_query(args) -> int:
    from .ingest import build_corpus_graph, load_corpus
    from .queries import (
        criterion_from_dict,
        study_limitation,
        study_match,
        study_quality,
    )
    from .turtle import load_turtle

    graph = build_corpus_graph(load_corpus(args.corpus))
    if args.kind == "match":
        if not args.criteria:
            raise ValidationError("query match needs --criteria")
        data = _load_json_arg(args.criteria)
        if isinstance(data, list):
            data = {"criteria": data}
        criteria = [criterion_from_dict(c) for c in data.get("criteria", [])]
        report = study_match(
            graph, criteria, conjunctive=bool(data.get("conjunctive", True))
        )
    elif args.kind == "limitation":
        if not args.criteria:
            raise ValidationError("query limitation needs --criteria")
        data = _load_json_arg(args.criteria)
        subgroup = criterion_from_dict(data.get("subgroup", data))
        report = study_limitation(
            graph, subgroup, underrep_threshold=args.underrep_threshold
        )
    else:
        if args.drug_family is None:
            raise ValidationError("query quality needs --drug-family")
        vocabulary = load_turtle(args.vocab) if args.vocab else None
        report = study_quality(
            graph,
            min_cohort=args.min_cohort,
            drug_family=args.drug_family,
            arm_fraction=args.arm_fraction,
            vocabulary=vocabulary,
        )
    _write_report(report.to_dict(), args.out, args.json)
    return EXIT_OK


def cmd_similarity(args) -> int:
    from .ingest import build_corpus_graph, load_corpus
    from .similarity import compare, load_patients, star_plot_series

    graph = build_corpus_graph(load_corpus(args.corpus))
    patients = {p.patient_id: p for p in load_patients(args.patients)}
    if args.patient not in patients:
        raise NotFoundError(f"unknown patient: {args.patient!r}")
    features = args.features.split(",") if args.features else None
    report = compare(graph, args.study, args.arm, patients[args.patient], features)
    payload: dict = {"report": report.to_dict()}
    if len(report.comparisons) >= 3:
        payload["plot"] = star_plot_series(report).to_dict()
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text if args.json or not args.out else f"overall closeness: {report.overall:.3f}")
    return EXIT_OK


def cmd_subset(args) -> int:
    from .subset import SubsetRequest, extract
    from .turtle import save_turtle

    module = extract(
        SubsetRequest(args.source, tuple(args.seed), args.annotations)
    )
    save_turtle(module.graph, args.out)
    print(
        f"retained {len(module.retained)} classes, "
        f"dropped {module.dropped_axioms} axiom(s) -> {args.out}"
    )
    if module.skipped_seeds:
        print(f"skipped seeds: {', '.join(module.skipped_seeds)}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohortkg",
        description="Knowledge graphs of clinical study populations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a corpus graph from study JSON files")
    p.add_argument("--corpus", required=True, help="directory of study JSON files")
    p.add_argument("--out", required=True, help="output Turtle file")
    p.add_argument("--json", action="store_true", help="machine-readable summary")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("serve", help="serve the JSON API for the faceted browser")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patients", required=True, help="patient CSV file")
    p.add_argument("--vocab", default=None, help="drug vocabulary Turtle file")
    p.add_argument("--bind", default="127.0.0.1:8080", help="host:port")
    p.add_argument("--cors-origin", action="append", default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("query", help="run a population-analysis query")
    p.add_argument("kind", choices=["match", "limitation", "quality"])
    p.add_argument("--corpus", required=True)
    p.add_argument("--criteria", default=None, help="criteria JSON (inline or file)")
    p.add_argument("--min-cohort", type=int, default=0)
    p.add_argument("--drug-family", default=None, help="drug family class IRI")
    p.add_argument("--arm-fraction", type=float, default=1 / 3)
    p.add_argument("--underrep-threshold", type=float, default=10.0)
    p.add_argument("--vocab", default=None)
    p.add_argument("--out", default=None, help="write the report JSON here")
    p.add_argument("--json", action="store_true", help="print the full report JSON")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("similarity", help="compare a patient against a study arm")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patients", required=True)
    p.add_argument("--study", required=True)
    p.add_argument("--arm", required=True)
    p.add_argument("--patient", required=True)
    p.add_argument("--features", default=None, help="comma-separated facet keys")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_similarity)

    p = sub.add_parser("subset", help="extract a minimal ontology module")
    p.add_argument("--source", required=True, help="source ontology Turtle file")
    p.add_argument("--seed", action="append", required=True, help="seed class IRI")
    p.add_argument("--annotations", action="store_true", help="keep labels/comments")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_subset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TurtleSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SchemaError, ValidationError, NotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, SchemaError):
            for diagnostic in exc.diagnostics:
                print(f"  {diagnostic}", file=sys.stderr)
        return EXIT_VALIDATION
    except json.JSONDecodeError as exc:
        print(f"error: bad JSON argument: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CohortKgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entrypoint() -> None:  # console_scripts target
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
