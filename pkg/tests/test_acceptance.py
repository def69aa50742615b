"""Acceptance gate: every primary criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one line per criterion;
each test prints "ACCEPTANCE <criterion>: PASS" when it holds, and pytest
reports the failure otherwise.
"""

import json
import random
import statistics
import time
from itertools import combinations

import pytest

from citeweave.citances import Citance, extract_citation_ids, parse_section
from citeweave.cli import main
from citeweave.corpus import mask_citations
from citeweave.graph import build_graph, compute_metrics
from citeweave.pipeline.backends import prompt_key
from citeweave.pipeline.engine import run_drafting, run_grouping
from citeweave.pipeline.groupings import grouping_to_dict, parse_grouping
from citeweave.pipeline.prompts import render_prompt_1a, render_prompt_1b, render_prompt_2
from citeweave.stats import METHOD_EXACT, Sample, holm_bonferroni, mann_whitney
from citeweave.synthetic import make_corpus, write_corpus

from conftest import load_golden, make_replay
from test_citances import DENSE_GROUPED_SENTENCE
from test_graph import assert_matches_oracle, graph_from_edges, random_graph
from test_grouping import _grouping_replay
from test_masking import REGRESSION_CASES
from test_stats import oracle_exact_p, oracle_u1

TOL = 1e-12


def _done(name):
    print(f"\nACCEPTANCE {name}: PASS")


def test_accept_graph_metric_oracle_equivalence():
    """1,000 random graphs with <= 10 nodes match the brute-force oracle at 1e-12."""
    start = time.monotonic()
    rng = random.Random(2024)
    for _ in range(1000):
        nodes, edges = random_graph(rng, max_nodes=10)
        assert_matches_oracle(nodes, edges)
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"oracle sweep took {elapsed:.1f}s"
    _done("graph-metric oracle equivalence")


def test_accept_trivial_graph_table():
    k3 = compute_metrics(graph_from_edges([1, 2, 3], [(1, 2), (2, 3), (1, 3)]))
    assert (k3.num_edges, k3.avg_degree, k3.density, k3.clustering) == (3, 2.0, 1.0, 1.0)
    p3 = compute_metrics(graph_from_edges([1, 2, 3], [(1, 2), (2, 3)]))
    assert p3.num_edges == 2
    assert abs(p3.avg_degree - 4 / 3) <= TOL
    assert abs(p3.density - 2 / 3) <= TOL
    assert p3.clustering == 0.0
    square = compute_metrics(
        graph_from_edges([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
    )
    assert abs(square.clustering - 5 / 6) <= TOL
    _done("trivial-graph table")


def test_accept_grouped_citation_sentence():
    ids = extract_citation_ids(DENSE_GROUPED_SENTENCE)
    assert ids == {11, 12, 13, 14, 15}
    section = parse_section(DENSE_GROUPED_SENTENCE, set(range(11, 21)))
    graph = build_graph(section.citances, section.cited_ids())
    assert len(graph.edges) == 10
    _done("grouped-citation sentence parsing")


def test_accept_mann_whitney_exactness():
    """500 tie-free cases with n1, n2 <= 7: exact p equals full enumeration."""
    start = time.monotonic()
    rng = random.Random(99)
    for _ in range(500):
        n1 = rng.randint(1, 7)
        n2 = rng.randint(1, 7)
        pool = rng.sample(range(100000), n1 + n2)
        a = [float(v) for v in pool[:n1]]
        b = [float(v) for v in pool[n1:]]
        res = mann_whitney(Sample("a", a), Sample("b", b))
        assert res.method == METHOD_EXACT
        assert res.u == oracle_u1(a, b)
        assert res.u + res.u_other == n1 * n2
        assert abs(res.p_two_sided - oracle_exact_p(a, b)) <= TOL
    # ten vs ten with complete separation: the statistic tops out at 100
    top = mann_whitney(
        Sample("a", [float(v) for v in range(20, 30)]),
        Sample("b", [float(v) for v in range(10)]),
    )
    assert top.u == 100.0
    elapsed = time.monotonic() - start
    assert elapsed < 30.0, f"exactness sweep took {elapsed:.1f}s"
    _done("mann-whitney exactness")


def test_accept_holm_correctness():
    assert holm_bonferroni([0.01, 0.04, 0.03]) == pytest.approx([0.03, 0.06, 0.06], abs=TOL)
    assert holm_bonferroni([0.04]) == [0.04]
    rng = random.Random(5)
    for _ in range(1000):
        ps = [rng.uniform(1e-6, 1.0) for _ in range(rng.randint(1, 9))]
        adjusted = holm_bonferroni(ps)
        assert all(a >= p - TOL for p, a in zip(ps, adjusted))
        assert all(a <= 1.0 for a in adjusted)
        ordered = sorted(zip(ps, adjusted))
        assert all(a1 <= a2 + TOL for (_, a1), (_, a2) in zip(ordered, ordered[1:]))
    _done("holm-bonferroni correctness")


def test_accept_synthetic_three_condition_pipeline(tmp_path, capsys):
    papers = make_corpus(n_papers=10, seed=7)
    corpus_dir = write_corpus(papers, tmp_path / "corpus")
    out_dir = tmp_path / "out"
    assert main(["evaluate", "--corpus", str(corpus_dir), "--out", str(out_dir)]) == 0
    capsys.readouterr()

    report = json.loads((out_dir / "report.json").read_text())
    rows = {(r["paper"], r["condition"]): r for r in report["rows"]}

    # evaluator output equals the planted closed-form values, per paper
    for paper in papers:
        for condition, planted in paper.planted.items():
            row = rows[(paper.paper_id, condition)]
            for metric, expected in planted.items():
                assert abs(row[metric] - expected) <= 1e-9, (
                    paper.paper_id, condition, metric,
                )

    # group means within 0.02 of the planted targets
    targets = {
        ("human", "density"): 0.14,
        ("human", "clustering"): 0.66,
        ("generated", "density"): 0.02,
        ("generated", "clustering"): 0.15,
    }
    for (condition, metric), target in targets.items():
        mean = statistics.mean(
            rows[(p.paper_id, condition)][metric] for p in papers
        )
        assert abs(mean - target) <= 0.02, (condition, metric, mean)

    # dense vs sparse separation: adjusted p < 0.01 for all four metrics
    for metric in ("edges", "avg_degree", "density", "clustering"):
        pair = report["report"]["metrics"][metric]["pairs"]["human_vs_generated"]
        assert pair["p_adjusted"] < 0.01, (metric, pair)

    # report both clustering variants (mean-local is the default; the global
    # transitivity reading stays available behind the config flag)
    from citeweave.config import EvaluationConfig
    from citeweave.service.evaluate import evaluate_corpus, load_corpus_dir

    items = load_corpus_dir(corpus_dir)
    global_run = evaluate_corpus(items, EvaluationConfig(clustering="global"), run_id="global")
    for condition in ("human", "generated"):
        local_mean = statistics.mean(rows[(p.paper_id, condition)]["clustering"] for p in papers)
        global_mean = statistics.mean(
            global_run.rows[(p.paper_id, condition)].metrics.clustering for p in papers
        )
        print(
            f"clustering[{condition}]: mean-local={local_mean:.4f} "
            f"global-transitivity={global_mean:.4f}"
        )
    _done("synthetic three-condition pipeline")


def test_accept_prompt_golden_files(fixture_wip):
    from test_prompts import make_fixture_group, make_fixture_grouping

    assert render_prompt_1a(fixture_wip) == load_golden("prompt_1a_fixture.txt")
    rendered_1b = render_prompt_1b(
        fixture_wip, make_fixture_group(), fixture_wip.abstracts_by_id()
    )
    assert rendered_1b == load_golden("prompt_1b_fixture.txt")
    assert render_prompt_2(fixture_wip, make_fixture_grouping()) == load_golden(
        "prompt_2_fixture.txt"
    )
    _done("prompt golden files")


def test_accept_pipeline_determinism_and_validation(fixture_wip):
    backend_a = _grouping_replay(fixture_wip)
    backend_b = _grouping_replay(fixture_wip)
    grouping_a, transcript_a = run_grouping(fixture_wip, backend_a)
    grouping_b, transcript_b = run_grouping(fixture_wip, backend_b)
    assert grouping_to_dict(grouping_a) == grouping_to_dict(grouping_b)
    assert transcript_a.to_dict() == transcript_b.to_dict()
    assert grouping_a.coverage_gap() == set()

    draft_text = "Retrieval [1] and a planted ghost [99].\n\nEvaluation [2]."
    backend_a.record(render_prompt_2(fixture_wip, grouping_a), draft_text)
    result, _ = run_drafting(fixture_wip, grouping_a, backend_a)
    assert result.hallucinated_ids == {99}
    assert any("Hallucination" in w for w in result.warnings)
    result_again, _ = run_drafting(fixture_wip, grouping_a, backend_a)
    assert result.to_dict() == result_again.to_dict()
    _done("pipeline determinism and validation")


def test_accept_masking_regression_and_idempotence():
    assert len(REGRESSION_CASES) == 30
    for text, expected in REGRESSION_CASES:
        masked, _ = mask_citations(text)
        assert masked == expected, text
        again, spans = mask_citations(masked)
        assert again == masked
        assert spans == []
    _done("masking regression and idempotence")
