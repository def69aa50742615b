"""Mann-Whitney U (exact path against full-permutation enumeration) and Holm."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from citeweave.stats import (
    EmptyFamily,
    METHOD_DEGENERATE,
    METHOD_EXACT,
    METHOD_NORMAL,
    MissingCondition,
    Sample,
    compare_conditions,
    holm_bonferroni,
    mann_whitney,
)

TOL = 1e-12


def oracle_u1(a, b):
    """Pair-count definition: wins plus half-ties of the first sample."""
    u = 0.0
    for x in a:
        for y in b:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


def oracle_exact_p(a, b):
    """Full-permutation enumeration over every split of the pooled values."""
    pooled = sorted(a + b)
    n1, n2 = len(a), len(b)
    obs = oracle_u1(a, b)
    u_lo, u_hi = min(obs, n1 * n2 - obs), max(obs, n1 * n2 - obs)
    hits = 0
    total = 0
    for chosen in combinations(range(n1 + n2), n1):
        # tie-free: U1 of a split is sum over chosen sorted positions of
        # (position - rank-within-chosen), i.e. the number of (a, b) wins
        u = sum(pos - k for k, pos in enumerate(chosen))
        total += 1
        if u >= u_hi or u <= u_lo:
            hits += 1
    return min(1.0, hits / total)


def test_complete_separation():
    res = mann_whitney(Sample("a", [1, 2, 3]), Sample("b", [4, 5, 6]))
    assert res.u == 0.0
    assert res.u_other == 9.0


def test_identical_samples_midpoint():
    values = list(range(10))
    res = mann_whitney(Sample("a", values), Sample("b", list(values)))
    assert res.u == 50.0  # n1*n2/2


def test_interleaved_exact_p():
    a, b = [1, 3, 5], [2, 4, 6]
    res = mann_whitney(Sample("a", a), Sample("b", b))
    assert res.method == METHOD_EXACT
    assert res.u == oracle_u1(a, b) == 3.0
    assert abs(res.p_two_sided - oracle_exact_p(a, b)) <= TOL


def test_max_u_for_ten_vs_ten():
    a = list(range(11, 21))
    b = list(range(1, 11))
    res = mann_whitney(Sample("a", [float(v) for v in a]), Sample("b", [float(v) for v in b]))
    assert res.u == 100.0
    assert res.u_other == 0.0
    assert 0.0 <= res.u <= res.n1 * res.n2


def test_degenerate_sample_flagged():
    res = mann_whitney(Sample("a", [2.0, 2.0]), Sample("b", [2.0, 2.0, 2.0]))
    assert res.degenerate
    assert res.p_two_sided == 1.0
    assert res.method == METHOD_DEGENERATE


def test_ties_use_midranks_and_normal_path():
    res = mann_whitney(Sample("a", [1, 2, 2, 3]), Sample("b", [2, 4, 5, 6]))
    assert res.method == METHOD_NORMAL
    # midranks: pooled [1,2,2,2,3,4,5,6] -> ranks [1,3,3,3,5,6,7,8]
    # R1 = 1+3+3+5 = 12, U1 = 12 - 10 = 2
    assert res.u == 2.0
    assert res.u + res.u_other == 16.0
    assert 0.0 < res.p_two_sided <= 1.0


def test_exact_suite_against_enumeration():
    rng = random.Random(7)
    for _ in range(120):
        n1 = rng.randint(1, 7)
        n2 = rng.randint(1, 7)
        pool = rng.sample(range(1000), n1 + n2)
        a = [float(v) for v in pool[:n1]]
        b = [float(v) for v in pool[n1:]]
        res = mann_whitney(Sample("a", a), Sample("b", b))
        assert res.method == METHOD_EXACT
        assert res.u == oracle_u1(a, b)
        assert res.u + res.u_other == n1 * n2
        assert abs(res.p_two_sided - oracle_exact_p(a, b)) <= TOL


@given(
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=8),
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=8),
)
def test_u_identity_holds_with_ties(a, b):
    res = mann_whitney(Sample("a", [float(v) for v in a]), Sample("b", [float(v) for v in b]))
    assert res.u + res.u_other == len(a) * len(b)
    assert 0.0 <= res.u <= len(a) * len(b)


@given(
    st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=6),
    st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=6),
    st.sampled_from([0.5, 1.0, 2.0, 3.0]),
    st.integers(min_value=-5, max_value=5),
)
def test_scale_shift_invariance(a, b, k, c):
    base = mann_whitney(Sample("a", [float(v) for v in a]), Sample("b", [float(v) for v in b]))
    moved = mann_whitney(
        Sample("a", [k * v + c for v in a]), Sample("b", [k * v + c for v in b])
    )
    assert moved.u == base.u
    assert moved.p_two_sided == base.p_two_sided


# --- Holm-Bonferroni ------------------------------------------------------------


def test_holm_single_test_unchanged():
    assert holm_bonferroni([0.04]) == [0.04]


def test_holm_step_down_example():
    got = holm_bonferroni([0.01, 0.04, 0.03])
    assert got == pytest.approx([0.03, 0.06, 0.06], abs=TOL)


def test_holm_clamps_at_one():
    assert holm_bonferroni([1.0, 1.0]) == [1.0, 1.0]


def test_holm_empty_family():
    with pytest.raises(EmptyFamily):
        holm_bonferroni([])


@given(st.lists(st.floats(min_value=1e-9, max_value=1.0), min_size=1, max_size=8))
def test_holm_dominates_raw(ps):
    adjusted = holm_bonferroni(ps)
    for raw, adj in zip(ps, adjusted):
        assert adj >= raw - TOL
        assert adj <= 1.0


@given(
    st.lists(st.floats(min_value=1e-9, max_value=1.0), min_size=1, max_size=8),
    st.randoms(),
)
def test_holm_order_equivariant(ps, rng):
    adjusted = holm_bonferroni(ps)
    order = list(range(len(ps)))
    rng.shuffle(order)
    permuted = [ps[i] for i in order]
    adjusted_permuted = holm_bonferroni(permuted)
    for k, i in enumerate(order):
        assert adjusted_permuted[k] == pytest.approx(adjusted[i], abs=TOL)


@given(st.lists(st.floats(min_value=1e-9, max_value=1.0), min_size=1, max_size=8))
def test_holm_monotone_in_sorted_order(ps):
    adjusted = holm_bonferroni(ps)
    pairs = sorted(zip(ps, adjusted))
    for (_, a1), (_, a2) in zip(pairs, pairs[1:]):
        assert a2 >= a1 - TOL


# --- condition comparison --------------------------------------------------------


def _table(conditions_values):
    table = {}
    for cond, values in conditions_values.items():
        for i, v in enumerate(values):
            table.setdefault((f"paper-{i}", cond), {})
            table[(f"paper-{i}", cond)] = {
                "edges": v, "avg_degree": v / 2, "density": v / 100, "clustering": v / 200,
            }
    return table


def test_compare_conditions_separation():
    table = _table({
        "human": [float(v) for v in range(20, 30)],
        "assisted": [float(v) + 0.5 for v in range(15, 25)],
        "generated": [float(v) for v in range(1, 11)],
    })
    report = compare_conditions(table)
    stat = report.metrics["edges"].pairs["human_vs_generated"]
    assert stat.u == 100.0
    assert stat.p < 1e-4
    assert report.conditions == ["human", "assisted", "generated"]
    assert set(report.metrics) == {"edges", "avg_degree", "density", "clustering"}
    assert len(report.metrics["edges"].pairs) == 3
    means = report.metrics["edges"].means
    assert means["human"] == pytest.approx(24.5)


def test_compare_conditions_identical_tables():
    values = [float(v) for v in range(10)]
    table = _table({"human": values, "assisted": list(values), "generated": list(values)})
    report = compare_conditions(table)
    for block in report.metrics.values():
        for stat in block.pairs.values():
            assert stat.p_adjusted == pytest.approx(1.0)


def test_compare_conditions_missing_condition():
    table = _table({"human": [1.0, 2.0], "assisted": [1.5, 2.5], "generated": [0.5, 0.7]})
    del table[("paper-1", "generated")]
    with pytest.raises(MissingCondition) as err:
        compare_conditions(table)
    assert err.value.paper == "paper-1"
    assert err.value.condition == "generated"


def test_compare_conditions_families():
    table = _table({
        "human": [float(v) for v in range(20, 30)],
        "assisted": [float(v) + 0.3 for v in range(18, 28)],
        "generated": [float(v) for v in range(1, 11)],
    })
    per_metric = compare_conditions(table, family="per-metric")
    global_family = compare_conditions(table, family="global")
    # global family adjusts over 12 tests, so adjusted p can only grow
    for metric in per_metric.metrics:
        for key in per_metric.metrics[metric].pairs:
            pm = per_metric.metrics[metric].pairs[key].p_adjusted
            gl = global_family.metrics[metric].pairs[key].p_adjusted
            assert gl >= pm - TOL
