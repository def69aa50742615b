"""Batch evaluation over corpus directories; agreement with the API path."""

import json

from fastapi.testclient import TestClient

from citeweave.config import EvaluationConfig
from citeweave.corpus import bundle_to_dict
from citeweave.service.app import create_app
from citeweave.service.evaluate import (
    PaperConditions,
    evaluate_corpus,
    format_summary_table,
    load_corpus_dir,
    metrics_csv,
    write_outputs,
)
from citeweave.service.store import ProjectStore
from citeweave.synthetic import make_corpus, write_corpus


def small_corpus(n=3):
    return make_corpus(n_papers=n, seed=11)


def test_corpus_dir_round_trip(tmp_path):
    papers = small_corpus()
    corpus_dir = write_corpus(papers, tmp_path / "corpus")
    items = load_corpus_dir(corpus_dir)
    assert [i.paper_id for i in items] == [p.paper_id for p in papers]
    for item, paper in zip(items, papers):
        assert set(item.texts) == {"human", "assisted", "generated"}
        assert item.texts["human"].strip() == paper.texts["human"].strip()


def test_human_condition_falls_back_to_bundle(tmp_path):
    papers = small_corpus()
    corpus_dir = write_corpus(papers, tmp_path / "corpus")
    for paper in papers:
        (corpus_dir / paper.paper_id / "human.txt").unlink()
    items = load_corpus_dir(corpus_dir)
    for item, paper in zip(items, papers):
        assert item.texts["human"] == paper.bundle.related_work


def test_evaluate_outputs_and_determinism(tmp_path):
    papers = small_corpus()
    corpus_dir = write_corpus(papers, tmp_path / "corpus")
    items = load_corpus_dir(corpus_dir)
    config = EvaluationConfig()

    run_a = evaluate_corpus(items, config, run_id="run-a")
    run_b = evaluate_corpus(items, config, run_id="run-b")
    assert metrics_csv(run_a) == metrics_csv(run_b)

    write_outputs(run_a, tmp_path / "out")
    out = tmp_path / "out"
    assert (out / "metrics.csv").exists()
    assert (out / "report.json").exists()
    assert (out / "summary.txt").exists()
    header = (out / "metrics.csv").read_text().splitlines()[0]
    assert header == "paper,condition,nodes,edges,avg_degree,density,clustering"
    dots = sorted((out / "figures").glob("*.dot"))
    assert len(dots) == 3 * len(papers)

    summary = (out / "summary.txt").read_text()
    assert "U (p)" in summary or "(U (p))" in summary


def test_single_paper_suppresses_stats(tmp_path):
    papers = small_corpus(n=1)
    corpus_dir = write_corpus(papers, tmp_path / "corpus")
    run = evaluate_corpus(load_corpus_dir(corpus_dir))
    assert run.report is None
    assert "suppressed" in run.note
    assert len(run.rows) == 3
    assert "No statistics" in format_summary_table(run)


def test_api_and_batch_paths_agree(tmp_path):
    papers = small_corpus()
    corpus_dir = write_corpus(papers, tmp_path / "corpus")
    items = load_corpus_dir(corpus_dir)
    batch_run = evaluate_corpus(items, EvaluationConfig(), run_id="batch")

    store = ProjectStore(tmp_path / "store")
    client = TestClient(create_app(store))
    for paper in papers:
        resp = client.post("/projects", json={"bundle": bundle_to_dict(paper.bundle)})
        assert resp.status_code == 201
        for condition in ("assisted", "generated"):
            ok = client.post(
                f"/projects/{paper.paper_id}/conditions/{condition}",
                json={"text": paper.texts[condition] + "\n"},
            )
            assert ok.status_code == 200
    api_doc = client.post(
        "/evaluations", json={"project_ids": [p.paper_id for p in papers], "config": {}}
    ).json()

    batch_rows = {
        (r["paper"], r["condition"]): r for r in batch_run.to_dict()["rows"]
    }
    for row in api_doc["rows"]:
        match = batch_rows[(row["paper"], row["condition"])]
        for field in ("nodes", "edges", "avg_degree", "density", "clustering"):
            assert row[field] == match[field]
    assert api_doc["report"]["metrics"].keys() == batch_run.report.to_dict()["metrics"].keys()
    for metric, block in api_doc["report"]["metrics"].items():
        expected = batch_run.report.to_dict()["metrics"][metric]
        assert block == expected


def test_rerun_from_config_snapshot_is_identical(tmp_path):
    papers = small_corpus()
    items = [PaperConditions(p.paper_id, p.bundle, p.texts) for p in papers]
    first = evaluate_corpus(items, EvaluationConfig(clustering="global"), run_id="x")
    snapshot = EvaluationConfig.from_dict(first.config.to_dict())
    second = evaluate_corpus(items, snapshot, run_id="x")
    assert metrics_csv(first) == metrics_csv(second)
    assert first.report.to_dict() == second.report.to_dict()


def test_config_validation(tmp_path):
    papers = small_corpus(n=2)
    items = [PaperConditions(p.paper_id, p.bundle, p.texts) for p in papers]
    try:
        evaluate_corpus(items, EvaluationConfig(universe="everything"))
        raised = False
    except ValueError:
        raised = True
    assert raised


def test_universe_bundle_mode(tmp_path):
    papers = small_corpus(n=2)
    items = [PaperConditions(p.paper_id, p.bundle, p.texts) for p in papers]
    text_run = evaluate_corpus(items, EvaluationConfig(universe="text"))
    bundle_run = evaluate_corpus(items, EvaluationConfig(universe="bundle"))
    for key, bundle_row in bundle_run.rows.items():
        text_row = text_run.rows[key]
        assert bundle_row.metrics.num_nodes >= text_row.metrics.num_nodes
        assert bundle_row.metrics.num_edges == text_row.metrics.num_edges
