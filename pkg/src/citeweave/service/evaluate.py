"""Three-condition evaluation: parse texts, build graphs, compute metrics and stats.

The same core serves the HTTP API and the batch CLI so both paths agree
exactly; outputs are deterministic for a fixed config and corpus.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..citances import parse_section
from ..config import UNIVERSE_BUNDLE, EvaluationConfig
from ..corpus import PaperBundle, load_bundle
from ..graph import (
    CitationGraph,
    GraphMetrics,
    build_graph,
    compute_metrics,
    export_dot,
    export_edge_csv,
    palette_for,
)
from ..stats import METRIC_NAMES_DEFAULT, MissingCondition, StatReport, compare_conditions

CONDITIONS = ("human", "assisted", "generated")

MIN_PAPERS_FOR_STATS = 2


@dataclass
class PaperConditions:
    paper_id: str
    bundle: PaperBundle
    texts: dict[str, str]  # condition -> text


@dataclass
class ConditionAnalysis:
    paper_id: str
    condition: str
    metrics: GraphMetrics
    graph: CitationGraph
    unknown_ids: set[int] = field(default_factory=set)
    citance_count: int = 0


@dataclass
class EvaluationRun:
    run_id: str
    config: EvaluationConfig
    created_at: str
    rows: dict[tuple[str, str], ConditionAnalysis] = field(default_factory=dict)
    report: StatReport | None = None
    note: str | None = None

    def metrics_table(self) -> dict[tuple[str, str], dict[str, float]]:
        return {
            key: {m: row.metrics.value(m) for m in METRIC_NAMES_DEFAULT}
            for key, row in self.rows.items()
        }

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "created_at": self.created_at,
            "config": self.config.to_dict(),
            "rows": [
                {
                    "paper": row.paper_id,
                    "condition": row.condition,
                    "nodes": row.metrics.num_nodes,
                    "edges": row.metrics.num_edges,
                    "avg_degree": row.metrics.avg_degree,
                    "density": row.metrics.density,
                    "clustering": row.metrics.clustering,
                    "unknown_ids": sorted(row.unknown_ids),
                    "citance_count": row.citance_count,
                }
                for _, row in sorted(self.rows.items())
            ],
            "report": self.report.to_dict() if self.report else None,
            "note": self.note,
        }


def analyze_condition(
    bundle: PaperBundle, condition: str, text: str, config: EvaluationConfig
) -> ConditionAnalysis:
    known = bundle.citation_ids()
    section = parse_section(text, known)
    if config.universe == UNIVERSE_BUNDLE:
        universe = set(known)
    else:
        universe = section.cited_ids()
    graph = build_graph(section.citances, universe)
    metrics = compute_metrics(graph, clustering=config.clustering, low_degree=config.low_degree)
    return ConditionAnalysis(
        paper_id=bundle.paper_id,
        condition=condition,
        metrics=metrics,
        graph=graph,
        unknown_ids=section.unknown_ids,
        citance_count=len(section.citances),
    )


def evaluate_corpus(
    items: list[PaperConditions],
    config: EvaluationConfig = EvaluationConfig(),
    conditions: tuple[str, ...] = CONDITIONS,
    run_id: str | None = None,
) -> EvaluationRun:
    """Evaluate every (paper, condition) text and compare conditions.

    With fewer than two papers the per-metric statistics are suppressed (a
    two-sample rank test over single-value samples says nothing) and the run
    carries an explanatory note instead.
    """
    config.validate()
    run = EvaluationRun(
        run_id=run_id or f"run-{uuid.uuid4().hex[:12]}",
        config=config,
        created_at=datetime.now(timezone.utc).isoformat(),
    )
    for item in items:
        for condition in conditions:
            if condition not in item.texts:
                raise MissingCondition(item.paper_id, condition)
            run.rows[(item.paper_id, condition)] = analyze_condition(
                item.bundle, condition, item.texts[condition], config
            )
    if len(items) >= MIN_PAPERS_FOR_STATS:
        run.report = compare_conditions(
            run.metrics_table(),
            family=config.holm_family,
            condition_order=list(conditions),
        )
    else:
        run.note = (
            f"statistics suppressed: {len(items)} paper(s) is below the "
            f"minimum of {MIN_PAPERS_FOR_STATS} for a two-sample comparison"
        )
    return run


# --- corpus directory layout --------------------------------------------------
#
#   corpus/
#     <paper>/bundle.json
#     <paper>/human.txt        (optional; falls back to the bundle's related work)
#     <paper>/assisted.txt
#     <paper>/generated.txt


def load_corpus_dir(corpus_dir: str | Path, conditions: tuple[str, ...] = CONDITIONS) -> list[PaperConditions]:
    corpus_dir = Path(corpus_dir)
    items: list[PaperConditions] = []
    for paper_dir in sorted(p for p in corpus_dir.iterdir() if p.is_dir()):
        bundle_path = paper_dir / "bundle.json"
        if not bundle_path.exists():
            continue
        bundle = load_bundle(bundle_path)
        texts: dict[str, str] = {}
        for condition in conditions:
            path = paper_dir / f"{condition}.txt"
            if path.exists():
                texts[condition] = path.read_text(encoding="utf-8")
            elif condition == "human" and bundle.related_work:
                texts[condition] = bundle.related_work
        items.append(PaperConditions(paper_id=bundle.paper_id, bundle=bundle, texts=texts))
    return items


METRICS_CSV_HEADER = "paper,condition,nodes,edges,avg_degree,density,clustering"


def metrics_csv(run: EvaluationRun) -> str:
    lines = [METRICS_CSV_HEADER]
    for (paper, condition), row in sorted(run.rows.items()):
        m = row.metrics
        lines.append(
            f"{paper},{condition},{m.num_nodes},{m.num_edges},"
            f"{m.avg_degree!r},{m.density!r},{m.clustering!r}"
        )
    return "\n".join(lines) + "\n"


_METRIC_LABELS = {
    "edges": "Number of edges",
    "avg_degree": "Average node degree",
    "density": "Density",
    "clustering": "Cluster coefficient",
}


def format_summary_table(run: EvaluationRun) -> str:
    """Human-readable summary: per-metric condition means and "U (p)" cells."""
    if run.report is None:
        return f"No statistics computed. {run.note or ''}".strip() + "\n"
    report = run.report
    conditions = report.conditions
    pair_labels = []
    pairs = []
    for i in range(len(conditions)):
        for j in range(i + 1, len(conditions)):
            pairs.append(f"{conditions[i]}_vs_{conditions[j]}")
            pair_labels.append(f"{conditions[i]} vs. {conditions[j]}")
    headers = (
        ["Statistic"]
        + [f"{c} (avg)" for c in conditions]
        + [f"{label} (U (p))" for label in pair_labels]
    )
    rows = [headers]
    for metric, block in report.metrics.items():
        row = [_METRIC_LABELS.get(metric, metric)]
        row += [f"{block.means[c]:.2f}" for c in conditions]
        for key in pairs:
            stat = block.pairs[key]
            row.append(f"{stat.u:.1f} ({stat.p_adjusted:.4f})")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(headers))]
    out = []
    for r, row in enumerate(rows):
        out.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if r == 0:
            out.append("  ".join("-" * widths[i] for i in range(len(widths))))
    return "\n".join(out) + "\n"


def write_outputs(run: EvaluationRun, out_dir: str | Path, figures: bool = True) -> None:
    """Write metrics CSV, report JSON, the summary table, and graph exports."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "metrics.csv").write_text(metrics_csv(run), encoding="utf-8")
    (out_dir / "report.json").write_text(
        json.dumps(run.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    (out_dir / "summary.txt").write_text(format_summary_table(run), encoding="utf-8")
    if not figures:
        return
    fig_dir = out_dir / "figures"
    fig_dir.mkdir(exist_ok=True)
    paper_ids: dict[str, set[int]] = {}
    for (paper, _), row in run.rows.items():
        paper_ids.setdefault(paper, set()).update(row.graph.nodes)
    for (paper, condition), row in sorted(run.rows.items()):
        palette = palette_for(paper_ids[paper])
        (fig_dir / f"{paper}_{condition}.dot").write_text(
            export_dot(row.graph, palette), encoding="utf-8"
        )
        (fig_dir / f"{paper}_{condition}.csv").write_text(
            export_edge_csv(row.graph), encoding="utf-8"
        )
