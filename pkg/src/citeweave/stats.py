"""Nonparametric comparison of metric samples across conditions.

Mann-Whitney U with midrank tie handling: the exact null distribution is
enumerated for small tie-free samples, otherwise a tie-corrected normal
approximation with continuity correction is used. Families of p-values are
adjusted with the Holm-Bonferroni step-down procedure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cache

EXACT_LIMIT = 12  # exact enumeration when n1, n2 <= this and the pooled data is tie-free

METHOD_EXACT = "exact"
METHOD_NORMAL = "normal-approx-tie-corrected"
METHOD_DEGENERATE = "degenerate"


class StatsError(Exception):
    pass


class EmptyFamily(StatsError):
    pass


class MissingCondition(StatsError):
    def __init__(self, paper: str, condition: str):
        self.paper = paper
        self.condition = condition
        super().__init__(f"paper {paper!r} has no {condition!r} condition")


@dataclass
class Sample:
    label: str
    values: list[float]


@dataclass
class UTestResult:
    u: float                 # U statistic of the first sample (U1)
    p_two_sided: float
    method: str
    n1: int
    n2: int
    degenerate: bool = False

    @property
    def u_other(self) -> float:
        return self.n1 * self.n2 - self.u


def _midranks(values: list[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


@cache
def _u_count(m: int, n: int, u: int) -> int:
    """Number of rank arrangements of an (m, n) split with U statistic u."""
    if u < 0:
        return 0
    if m == 0 or n == 0:
        return 1 if u == 0 else 0
    return _u_count(m - 1, n, u - n) + _u_count(m, n - 1, u)


def _exact_two_sided_p(u1: float, n1: int, n2: int) -> float:
    total = math.comb(n1 + n2, n1)
    u_hi = max(u1, n1 * n2 - u1)
    tail = sum(_u_count(n1, n2, u) for u in range(int(math.ceil(u_hi)), n1 * n2 + 1))
    return min(1.0, 2.0 * tail / total)


def _normal_two_sided_p(u1: float, n1: int, n2: int, pooled: list[float]) -> float:
    big_n = n1 + n2
    tie_term = 0.0
    seen: dict[float, int] = {}
    for v in pooled:
        seen[v] = seen.get(v, 0) + 1
    for count in seen.values():
        tie_term += count**3 - count
    variance = n1 * n2 / 12.0 * ((big_n + 1) - tie_term / (big_n * (big_n - 1)))
    if variance <= 0:
        return 1.0
    deviation = max(abs(u1 - n1 * n2 / 2.0) - 0.5, 0.0)  # continuity correction
    z = deviation / math.sqrt(variance)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))


def mann_whitney(a: Sample, b: Sample) -> UTestResult:
    """Two-sided Mann-Whitney U test; the reported U is the first sample's U1.

    If every pooled value is identical the result is flagged degenerate with
    p = 1.0 rather than raising, so batch comparisons stay total.
    """
    if not a.values or not b.values:
        raise StatsError("samples must be non-empty")
    n1, n2 = len(a.values), len(b.values)
    pooled = list(a.values) + list(b.values)
    if any(not math.isfinite(v) for v in pooled):
        raise StatsError("sample values must be finite")

    if len(set(pooled)) == 1:
        return UTestResult(
            u=n1 * n2 / 2.0, p_two_sided=1.0, method=METHOD_DEGENERATE,
            n1=n1, n2=n2, degenerate=True,
        )

    ranks = _midranks(pooled)
    r1 = sum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2.0

    tie_free = len(set(pooled)) == len(pooled)
    if tie_free and n1 <= EXACT_LIMIT and n2 <= EXACT_LIMIT:
        return UTestResult(
            u=u1, p_two_sided=_exact_two_sided_p(u1, n1, n2),
            method=METHOD_EXACT, n1=n1, n2=n2,
        )
    return UTestResult(
        u=u1, p_two_sided=_normal_two_sided_p(u1, n1, n2, pooled),
        method=METHOD_NORMAL, n1=n1, n2=n2,
    )


def holm_bonferroni(p_values: list[float]) -> list[float]:
    """Step-down adjusted p-values, returned in the input order.

    adj_(i) = max(adj_(i-1), (m - i + 1) * p_(i)) over the ascending order,
    clamped at 1.
    """
    if not p_values:
        raise EmptyFamily("no p-values to adjust")
    m = len(p_values)
    order = sorted(range(m), key=lambda i: p_values[i])
    adjusted = [0.0] * m
    running = 0.0
    for rank, idx in enumerate(order):
        running = max(running, (m - rank) * p_values[idx])
        adjusted[idx] = min(1.0, running)
    return adjusted


# --- condition comparison ---------------------------------------------------

DEFAULT_CONDITIONS = ("human", "assisted", "generated")
METRIC_NAMES_DEFAULT = ("edges", "avg_degree", "density", "clustering")

FAMILY_PER_METRIC = "per-metric"
FAMILY_GLOBAL = "global"


@dataclass
class PairStat:
    pair: tuple[str, str]
    u: float
    p: float
    p_adjusted: float
    method: str
    n1: int
    n2: int
    degenerate: bool = False


@dataclass
class MetricComparison:
    metric: str
    means: dict[str, float]
    pairs: dict[str, PairStat] = field(default_factory=dict)


@dataclass
class StatReport:
    family: str
    conditions: list[str]
    metrics: dict[str, MetricComparison] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "conditions": list(self.conditions),
            "metrics": {
                name: {
                    "means": dict(block.means),
                    "pairs": {
                        key: {
                            "u": stat.u,
                            "p": stat.p,
                            "p_adjusted": stat.p_adjusted,
                            "method": stat.method,
                            "n1": stat.n1,
                            "n2": stat.n2,
                            "degenerate": stat.degenerate,
                        }
                        for key, stat in block.pairs.items()
                    },
                }
                for name, block in self.metrics.items()
            },
        }


def pair_key(a: str, b: str) -> str:
    return f"{a}_vs_{b}"


def _condition_order(labels: set[str]) -> list[str]:
    if labels == set(DEFAULT_CONDITIONS):
        return list(DEFAULT_CONDITIONS)
    return sorted(labels)


def compare_conditions(
    per_paper_metrics: dict[tuple[str, str], dict[str, float]],
    family: str = FAMILY_PER_METRIC,
    metrics: tuple[str, ...] = METRIC_NAMES_DEFAULT,
    condition_order: list[str] | None = None,
) -> StatReport:
    """Pairwise Mann-Whitney tests for every metric, Holm-adjusted.

    ``per_paper_metrics`` maps (paper, condition) to a metric->value dict; all
    conditions must be present for every paper. The Holm family is the pairwise
    comparisons within a metric by default, or all tests jointly ("global").
    """
    if family not in (FAMILY_PER_METRIC, FAMILY_GLOBAL):
        raise StatsError(f"unknown family policy {family!r}")
    papers = sorted({paper for paper, _ in per_paper_metrics})
    labels = {cond for _, cond in per_paper_metrics}
    conditions = condition_order or _condition_order(labels)
    for paper in papers:
        for cond in conditions:
            if (paper, cond) not in per_paper_metrics:
                raise MissingCondition(paper, cond)

    report = StatReport(family=family, conditions=conditions)
    raw: list[tuple[str, str, PairStat]] = []
    pairs = [
        (conditions[i], conditions[j])
        for i in range(len(conditions))
        for j in range(i + 1, len(conditions))
    ]
    for metric in metrics:
        samples = {
            cond: [per_paper_metrics[(paper, cond)][metric] for paper in papers]
            for cond in conditions
        }
        means = {cond: sum(vals) / len(vals) for cond, vals in samples.items()}
        block = MetricComparison(metric=metric, means=means)
        for a, b in pairs:
            res = mann_whitney(Sample(a, samples[a]), Sample(b, samples[b]))
            stat = PairStat(
                pair=(a, b), u=res.u, p=res.p_two_sided, p_adjusted=res.p_two_sided,
                method=res.method, n1=res.n1, n2=res.n2, degenerate=res.degenerate,
            )
            block.pairs[pair_key(a, b)] = stat
            raw.append((metric, pair_key(a, b), stat))
        report.metrics[metric] = block

    if family == FAMILY_PER_METRIC:
        for metric in metrics:
            stats = [s for m, _, s in raw if m == metric]
            adjusted = holm_bonferroni([s.p for s in stats])
            for stat, adj in zip(stats, adjusted):
                stat.p_adjusted = adj
    else:
        stats = [s for _, _, s in raw]
        adjusted = holm_bonferroni([s.p for s in stats])
        for stat, adj in zip(stats, adjusted):
            stat.p_adjusted = adj
    return report
