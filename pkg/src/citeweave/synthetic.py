"""Synthetic three-condition corpora with planted citation-graph structure.

Each condition text is rendered from a recipe of T disjoint triangles, a
triangle-free bipartite block with k edges, and isolated mentions. The planted
metrics are closed-form in the recipe:

    nodes      N = 3T + a + b + z
    edges      E = 3T + k
    avg degree 2E / N
    density    E / (N(N-1)/2)
    clustering 3T / N           (mean local, degree-<2 nodes counting 0)

so expected values never depend on the graph code under test. Targets default
to the reported condition averages: dense (human-like) density 0.14 and
clustering 0.66, assisted 0.13/0.63, sparse (machine-like) 0.02/0.15.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CitationEntry, PaperBundle, store_bundle


@dataclass(frozen=True)
class Recipe:
    triangles: int
    side_a: int
    side_b: int
    isolated: int
    block_edges: int

    @property
    def num_nodes(self) -> int:
        return 3 * self.triangles + self.side_a + self.side_b + self.isolated

    @property
    def num_edges(self) -> int:
        return 3 * self.triangles + self.block_edges

    @property
    def avg_degree(self) -> float:
        return 2.0 * self.num_edges / self.num_nodes

    @property
    def density(self) -> float:
        n = self.num_nodes
        return self.num_edges / (n * (n - 1) / 2.0)

    @property
    def clustering(self) -> float:
        return 3.0 * self.triangles / self.num_nodes

    def planted_metrics(self) -> dict[str, float]:
        return {
            "edges": float(self.num_edges),
            "avg_degree": self.avg_degree,
            "density": self.density,
            "clustering": self.clustering,
        }


@dataclass(frozen=True)
class ConditionTargets:
    density: float
    clustering: float


DENSE_TARGETS = ConditionTargets(density=0.14, clustering=0.66)
ASSISTED_TARGETS = ConditionTargets(density=0.13, clustering=0.63)
SPARSE_TARGETS = ConditionTargets(density=0.02, clustering=0.15)

DEFAULT_TARGETS = {
    "human": DENSE_TARGETS,
    "assisted": ASSISTED_TARGETS,
    "generated": SPARSE_TARGETS,
}


def _candidates(
    targets: ConditionTargets,
    max_nodes: int | None,
    dense: bool,
    min_nodes: int = 4,
) -> list[tuple[float, Recipe]]:
    """All structurally valid recipes for the target regime, best score first."""
    if dense:
        triangle_range = range(2, 9)
        side_range = range(0, 8)
        isolated_range = range(0, 6)
    else:
        triangle_range = range(1, 3)
        side_range = range(0, 5)
        isolated_range = range(0, 26)
    scored: list[tuple[float, tuple, Recipe]] = []
    for t in triangle_range:
        for a in side_range:
            for b in side_range:
                for z in isolated_range:
                    n = 3 * t + a + b + z
                    if n < min_nodes or (max_nodes is not None and n > max_nodes):
                        continue
                    possible = n * (n - 1) / 2.0
                    want_edges = round(targets.density * possible) - 3 * t
                    k = min(max(want_edges, 0), a * b)
                    recipe = Recipe(t, a, b, z, k)
                    score = abs(recipe.clustering - targets.clustering) + abs(
                        recipe.density - targets.density
                    )
                    scored.append((score, (t, a, b, z, k), recipe))
    scored.sort(key=lambda item: (item[0], item[1]))
    return [(score, recipe) for score, _, recipe in scored]


def _pick_recipe(
    candidates: list[tuple[float, Recipe]],
    used_values: dict[str, set[float]],
    window: float = 0.004,
) -> Recipe:
    """Best-scoring recipe, preferring (within a small score window) one whose
    metric values have not been used yet: accuracy to the planted targets wins
    over tie-freeness, since pooled ties only switch the rank test to its
    tie-corrected path."""
    best_score = candidates[0][0]
    chosen = None
    for score, recipe in candidates:
        if score > best_score + window:
            break
        values = recipe.planted_metrics()
        if any(values[m] in used_values[m] for m in used_values):
            continue
        chosen = recipe
        break
    if chosen is None:
        chosen = candidates[0][1]
    for m in used_values:
        used_values[m].add(chosen.planted_metrics()[m])
    return chosen


# --- text rendering -----------------------------------------------------------

_TRIANGLE_TEMPLATES = [
    "The studies reported in [{a}], [{b}], and [{c}] pursue closely related goals.",
    "Joint progress on this problem appears in [{a}], [{b}], and [{c}].",
    "Complementary evidence is provided by [{a}], [{b}], and [{c}].",
    "A shared benchmark underlies the experiments of [{a}], [{b}], and [{c}].",
]

_PAIR_TEMPLATES = [
    "The method of [{a}] extends the framework introduced in [{b}].",
    "Later work in [{a}] revisits the assumptions made by [{b}].",
    "Results from [{a}] were reproduced at scale by [{b}].",
    "The system described in [{a}] borrows its training signal from [{b}].",
]

_ISOLATED_TEMPLATES = [
    "A separate line of work is presented in [{a}].",
    "An orthogonal perspective appears in [{a}].",
    "One early contribution to this area is [{a}].",
    "Independent of the above, [{a}] studies a related setting.",
]


def render_condition_text(recipe: Recipe, rng: random.Random) -> str:
    """Serialize the planted graph into sentences; one clique per sentence."""
    t, a, b = recipe.triangles, recipe.side_a, recipe.side_b
    nodes = list(range(1, recipe.num_nodes + 1))
    triangle_nodes = nodes[: 3 * t]
    side_a = nodes[3 * t : 3 * t + a]
    side_b = nodes[3 * t + a : 3 * t + a + b]
    isolated = nodes[3 * t + a + b :]

    sentences: list[str] = []
    mentioned: set[int] = set()
    for i in range(t):
        x, y, w = triangle_nodes[3 * i : 3 * i + 3]
        template = rng.choice(_TRIANGLE_TEMPLATES)
        sentences.append(template.format(a=x, b=y, c=w))
        mentioned |= {x, y, w}
    pairs = [(u, v) for u in side_a for v in side_b][: recipe.block_edges]
    for u, v in pairs:
        template = rng.choice(_PAIR_TEMPLATES)
        sentences.append(template.format(a=u, b=v))
        mentioned |= {u, v}
    for node in side_a + side_b + isolated:
        if node not in mentioned:
            template = rng.choice(_ISOLATED_TEMPLATES)
            sentences.append(template.format(a=node))
            mentioned.add(node)
    rng.shuffle(sentences)
    paragraphs = [" ".join(sentences[i : i + 5]) for i in range(0, len(sentences), 5)]
    return "\n\n".join(paragraphs)


@dataclass
class SyntheticPaper:
    paper_id: str
    bundle: PaperBundle
    texts: dict[str, str]
    planted: dict[str, dict[str, float]] = field(default_factory=dict)


def make_corpus(
    n_papers: int = 10,
    seed: int = 7,
    targets: dict[str, ConditionTargets] | None = None,
) -> list[SyntheticPaper]:
    """Build a deterministic corpus; the human condition carries the densest
    structure and its citation list spans every id the other conditions use."""
    targets = targets or DEFAULT_TARGETS
    rng = random.Random(seed)
    used_values: dict[str, set[float]] = {
        m: set() for m in ("edges", "avg_degree", "density", "clustering")
    }
    papers: list[SyntheticPaper] = []
    for i in range(n_papers):
        centered = i - (n_papers - 1) / 2.0
        jitter_cc = centered * 0.0027
        jitter_d = ((i * 3) % n_papers - (n_papers - 1) / 2.0) * 0.0009
        recipes: dict[str, Recipe] = {}
        dense_targets = targets["human"]
        adjusted = ConditionTargets(
            density=dense_targets.density + jitter_d,
            clustering=dense_targets.clustering + jitter_cc,
        )
        # at least 18 citations in the densest graph so the sparse condition,
        # capped at the same node budget, can reach clustering near 3/20
        recipes["human"] = _pick_recipe(
            _candidates(adjusted, None, dense=True, min_nodes=18), used_values
        )
        max_nodes = recipes["human"].num_nodes
        for condition in ("assisted", "generated"):
            base = targets[condition]
            adjusted = ConditionTargets(
                density=base.density + jitter_d, clustering=base.clustering + jitter_cc
            )
            dense = condition == "assisted"
            recipes[condition] = _pick_recipe(
                _candidates(adjusted, max_nodes, dense=dense), used_values
            )

        paper_id = f"synth-{i:02d}"
        texts = {
            condition: render_condition_text(recipe, random.Random(seed * 1000 + i * 10 + j))
            for j, (condition, recipe) in enumerate(sorted(recipes.items()))
        }
        n_citations = recipes["human"].num_nodes
        citations = [
            CitationEntry(
                id=k,
                title=f"Synthetic cited work {i}-{k}",
                abstract=f"Abstract of synthetic cited work {i}-{k}, describing method {k}.",
                authors=[f"Author {k}"],
                year=2020 + (k % 4),
                url=f"https://example.org/{paper_id}/{k}",
            )
            for k in range(1, n_citations + 1)
        ]
        bundle = PaperBundle(
            paper_id=paper_id,
            title=f"Synthetic Work in Progress {i}",
            abstract=f"This synthetic paper {i} studies structured citation behaviour.",
            introduction=(
                f"Synthetic introduction {i}. The corpus exists to exercise the "
                "evaluation pipeline end to end."
            ),
            related_work=texts["human"],
            conclusion=f"Synthetic conclusion {i}. The pipeline ran to completion.",
            citations=citations,
        )
        papers.append(
            SyntheticPaper(
                paper_id=paper_id,
                bundle=bundle,
                texts=texts,
                planted={cond: recipe.planted_metrics() for cond, recipe in recipes.items()},
            )
        )
    return papers


def write_corpus(papers: list[SyntheticPaper], out_dir: str | Path) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for paper in papers:
        pdir = out_dir / paper.paper_id
        pdir.mkdir(exist_ok=True)
        store_bundle(paper.bundle, pdir / "bundle.json")
        for condition, text in paper.texts.items():
            (pdir / f"{condition}.txt").write_text(text + "\n", encoding="utf-8")
    return out_dir
