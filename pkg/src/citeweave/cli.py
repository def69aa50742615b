"""Command-line interface: ingest, parse, graph, stats, pipeline, serve, evaluate."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .citances import citances_from_dicts, citances_to_dicts, parse_section
from .config import EvaluationConfig
from .corpus import load_bundle, load_wip, redact, store_bundle, store_wip
from .graph import build_graph, compute_metrics, export_dot, export_edge_csv
from .pipeline.backends import ChatHttpBackend, ReplayBackend
from .pipeline.engine import run_drafting, run_grouping
from .pipeline.groupings import grouping_from_dict, grouping_to_dict
from .stats import compare_conditions
from .service.evaluate import evaluate_corpus, format_summary_table, load_corpus_dir, write_outputs


def _cmd_ingest(args) -> int:
    from .ingest import AcademicApiClient, ApiConfig

    client = AcademicApiClient(ApiConfig.from_env())
    result = client.fetch_paper(args.paper_id)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = store_bundle(result.bundle, out_dir / f"{result.bundle.paper_id}.json")
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(path)
    return 0


def _cmd_redact(args) -> int:
    bundle = load_bundle(args.bundle)
    store_wip(redact(bundle), args.out)
    print(args.out)
    return 0


def _cmd_parse(args) -> int:
    text = Path(args.text_file).read_text(encoding="utf-8")
    bundle = load_bundle(args.citations)
    section = parse_section(text, bundle.citation_ids())
    doc = citances_to_dicts(section)
    Path(args.out).write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    if section.unknown_ids:
        print(f"warning: unknown citation ids {sorted(section.unknown_ids)}", file=sys.stderr)
    print(args.out)
    return 0


def _cmd_graph(args) -> int:
    citances = citances_from_dicts(json.loads(Path(args.citances).read_text(encoding="utf-8")))
    if args.universe == "bundle":
        if not args.citations:
            print("--universe bundle requires --citations <bundle.json>", file=sys.stderr)
            return 2
        universe = load_bundle(args.citations).citation_ids()
    else:
        universe = set()
        for citance in citances:
            universe |= citance.citation_ids
    graph = build_graph(citances, universe)
    metrics = compute_metrics(graph, clustering=args.clustering)
    print(
        f"nodes={metrics.num_nodes} edges={metrics.num_edges} "
        f"avg_degree={metrics.avg_degree:.4f} density={metrics.density:.4f} "
        f"clustering={metrics.clustering:.4f}"
    )
    if args.dot:
        Path(args.dot).write_text(export_dot(graph), encoding="utf-8")
    if args.csv:
        Path(args.csv).write_text(export_edge_csv(graph), encoding="utf-8")
    return 0


def _cmd_stats(args) -> int:
    table: dict[tuple[str, str], dict[str, float]] = {}
    lines = Path(args.metrics).read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    for line in lines[1:]:
        if not line.strip():
            continue
        row = dict(zip(header, line.split(",")))
        table[(row["paper"], row["condition"])] = {
            "edges": float(row["edges"]),
            "avg_degree": float(row["avg_degree"]),
            "density": float(row["density"]),
            "clustering": float(row["clustering"]),
        }
    report = compare_conditions(table, family=args.family)
    Path(args.out).write_text(
        json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    print(args.out)
    return 0


def _make_backend(kind: str, transcript: str | None):
    if kind == "replay":
        if not transcript:
            print("--backend replay requires --transcript <replies.json>", file=sys.stderr)
            raise SystemExit(2)
        return ReplayBackend.from_file(transcript)
    return ChatHttpBackend.from_env()


def _cmd_group(args) -> int:
    wip = load_wip(args.wip)
    backend = _make_backend(args.backend, args.transcript)
    grouping, transcript = run_grouping(wip, backend)
    Path(args.out).write_text(
        json.dumps(grouping_to_dict(grouping), ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    if args.audit:
        Path(args.audit).write_text(
            json.dumps(transcript.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    print(args.out)
    return 0


def _cmd_draft(args) -> int:
    wip = load_wip(args.wip)
    doc = json.loads(Path(args.groups).read_text(encoding="utf-8"))
    grouping = grouping_from_dict(doc, wip.citation_ids())
    backend = _make_backend(args.backend, args.transcript)
    result, _ = run_drafting(wip, grouping, backend)
    Path(args.out).write_text(result.text + "\n", encoding="utf-8")
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .pipeline.backends import DecodingConfig
    from .pipeline.engine import DRAFT_DECODING, GROUPING_DECODING
    from .service.app import create_app
    from .service.store import ProjectStore

    # config file may set backend selection, decoding defaults, and the
    # evaluation defaults; explicit flags win
    file_config = {}
    if args.config:
        file_config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    backend_kind = args.backend if args.backend != "none" or not file_config else file_config.get("backend", "none")
    transcript = args.transcript or file_config.get("transcript")
    backend = None
    if backend_kind == "replay" and transcript:
        backend = ReplayBackend.from_file(transcript)
    elif backend_kind == "live":
        backend = ChatHttpBackend.from_env()
    grouping_decoding = GROUPING_DECODING
    if "grouping_temperature" in file_config:
        grouping_decoding = DecodingConfig(temperature=float(file_config["grouping_temperature"]))
    draft_decoding = DRAFT_DECODING
    if "draft_temperature" in file_config:
        draft_decoding = DecodingConfig(temperature=float(file_config["draft_temperature"]))
    evaluation_defaults = EvaluationConfig.from_dict(file_config.get("evaluation", {}))
    app = create_app(
        ProjectStore(args.store),
        backend=backend,
        default_config=evaluation_defaults,
        grouping_decoding=grouping_decoding,
        draft_decoding=draft_decoding,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_import(args) -> int:
    from .importer import import_condition_corpus

    imported = import_condition_corpus(args.source, args.out)
    print(f"imported {len(imported)} papers into {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    from .stats import MissingCondition

    config = EvaluationConfig.from_file(args.config) if args.config else EvaluationConfig()
    items = load_corpus_dir(args.corpus)
    if not items:
        print(f"no paper directories with bundle.json under {args.corpus}", file=sys.stderr)
        return 1
    try:
        run = evaluate_corpus(items, config)
    except MissingCondition as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    write_outputs(run, args.out)
    print(format_summary_table(run), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="citeweave")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="fetch a paper bundle from the academic-graph API")
    p.add_argument("paper_id")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("redact", help="strip the related-work text from a bundle")
    p.add_argument("bundle")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_redact)

    p = sub.add_parser("parse", help="segment a text and extract per-sentence citations")
    p.add_argument("text_file")
    p.add_argument("--citations", required=True, help="bundle.json supplying known ids")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("graph", help="build the concurrence graph and report metrics")
    p.add_argument("citances")
    p.add_argument("--universe", choices=["text", "bundle"], default="text")
    p.add_argument("--citations", help="bundle.json (required for --universe bundle)")
    p.add_argument("--clustering", choices=["local", "global"], default="local")
    p.add_argument("--dot")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("stats", help="condition comparison from a metrics CSV")
    p.add_argument("metrics")
    p.add_argument("--family", choices=["per-metric", "global"], default="per-metric")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("group", help="run the two-step grouping pipeline")
    p.add_argument("wip")
    p.add_argument("--backend", choices=["live", "replay"], default="live")
    p.add_argument("--transcript", help="replay replies file")
    p.add_argument("--audit", help="write the pipeline transcript here")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("draft", help="draft the related-work section from groupings")
    p.add_argument("wip")
    p.add_argument("groups")
    p.add_argument("--backend", choices=["live", "replay"], default="live")
    p.add_argument("--transcript")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_draft)

    p = sub.add_parser("serve", help="run the HTTP workbench")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--store", required=True)
    p.add_argument("--backend", choices=["live", "replay", "none"], default="none")
    p.add_argument("--transcript")
    p.add_argument("--config", help="JSON: backend, transcript, decoding, evaluation defaults")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("import-corpus", help="convert externally obtained condition texts")
    p.add_argument("source", help="JSON list of {paper_id, citations, texts{...}} records")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_import)

    p = sub.add_parser("evaluate", help="batch three-condition evaluation of a corpus dir")
    p.add_argument("--corpus", required=True)
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
