"""Citation concurrence graphs: construction, structural metrics, and exports.

Nodes are cited works; an edge joins two works mentioned in the same sentence.
The graph is simple: repeated concurrences accumulate provenance, not edge
multiplicity.
"""

from __future__ import annotations

import colorsys
import io
from dataclasses import dataclass, field
from itertools import combinations

from .citances import Citance

Edge = tuple[int, int]


class UnknownNode(ValueError):
    pass


@dataclass
class CitationGraph:
    nodes: set[int] = field(default_factory=set)
    edges: set[Edge] = field(default_factory=set)
    provenance: dict[Edge, list[int]] = field(default_factory=dict)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def build_graph(citances: list[Citance], node_universe: set[int]) -> CitationGraph:
    """Union of per-sentence cliques over ``node_universe``.

    Isolated cited works remain as degree-0 nodes. A citance id outside the
    universe raises UnknownNode.
    """
    graph = CitationGraph(nodes=set(node_universe))
    for citance in citances:
        stray = citance.citation_ids - graph.nodes
        if stray:
            raise UnknownNode(
                f"citance {citance.index} cites {sorted(stray)} outside the node universe"
            )
        for a, b in combinations(sorted(citance.citation_ids), 2):
            edge = (a, b)
            if edge not in graph.edges:
                graph.edges.add(edge)
                graph.provenance[edge] = []
            graph.provenance[edge].append(citance.index)
    return graph


@dataclass
class GraphMetrics:
    num_nodes: int
    num_edges: int
    avg_degree: float
    density: float
    clustering: float

    def value(self, metric: str) -> float:
        return {
            "edges": float(self.num_edges),
            "avg_degree": self.avg_degree,
            "density": self.density,
            "clustering": self.clustering,
        }[metric]


METRIC_NAMES = ("edges", "avg_degree", "density", "clustering")


def compute_metrics(
    graph: CitationGraph,
    clustering: str = "local",
    low_degree: str = "zero",
) -> GraphMetrics:
    """Structural metrics of the concurrence graph.

    clustering "local" is the mean local clustering coefficient; nodes of
    degree < 2 contribute 0 ("zero") or are dropped from the mean ("exclude").
    clustering "global" is the transitivity ratio 3*triangles/triads.
    Degenerate graphs yield 0 rather than NaN so batch pipelines never fail.
    """
    n = len(graph.nodes)
    m = len(graph.edges)
    avg_degree = (2.0 * m / n) if n > 0 else 0.0
    density = (m / (n * (n - 1) / 2.0)) if n > 1 else 0.0
    return GraphMetrics(
        num_nodes=n,
        num_edges=m,
        avg_degree=avg_degree,
        density=density,
        clustering=_clustering(graph, clustering, low_degree),
    )


def _clustering(graph: CitationGraph, variant: str, low_degree: str) -> float:
    adj = graph.adjacency()
    if variant == "global":
        closed = 0
        triads = 0
        for v, neighbors in adj.items():
            d = len(neighbors)
            triads += d * (d - 1) // 2
            closed += sum(1 for a, b in combinations(sorted(neighbors), 2) if b in adj[a])
        return closed / triads if triads else 0.0
    if variant != "local":
        raise ValueError(f"unknown clustering variant {variant!r}")
    coefficients = []
    for v, neighbors in adj.items():
        d = len(neighbors)
        if d < 2:
            if low_degree == "zero":
                coefficients.append(0.0)
            continue
        links = sum(1 for a, b in combinations(sorted(neighbors), 2) if b in adj[a])
        coefficients.append(2.0 * links / (d * (d - 1)))
    return sum(coefficients) / len(coefficients) if coefficients else 0.0


# --- exports ----------------------------------------------------------------

_GOLDEN = 0.6180339887498949


def color_for_id(citation_id: int) -> str:
    """Deterministic hex color for a citation id; stable across graphs."""
    hue = (citation_id * _GOLDEN) % 1.0
    sat = 0.55 + 0.15 * ((citation_id * 7) % 3)
    val = 0.95 - 0.20 * ((citation_id * 5) % 2)
    r, g, b = colorsys.hsv_to_rgb(hue, min(sat, 1.0), val)
    return "#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255))


def palette_for(ids) -> dict[int, str]:
    return {cid: color_for_id(cid) for cid in ids}


def export_dot(graph: CitationGraph, palette: dict[int, str] | None = None) -> str:
    """DOT text with one filled node per citation, labeled "[id]".

    The palette must cover all nodes; by default it is derived from the ids,
    so the same citation id gets the same color in every exported graph.
    """
    if palette is None:
        palette = palette_for(graph.nodes)
    missing = graph.nodes - palette.keys()
    if missing:
        raise ValueError(f"palette does not cover nodes {sorted(missing)}")
    out = io.StringIO()
    out.write("graph citations {\n")
    out.write("  node [shape=circle style=filled];\n")
    for v in sorted(graph.nodes):
        out.write(f'  {v} [label="[{v}]" fillcolor="{palette[v]}"];\n')
    for a, b in sorted(graph.edges):
        out.write(f"  {a} -- {b};\n")
    out.write("}\n")
    return out.getvalue()


def export_edge_csv(graph: CitationGraph) -> str:
    """Edge list CSV: source_id,target_id,provenance_count."""
    lines = ["source_id,target_id,provenance_count"]
    for a, b in sorted(graph.edges):
        lines.append(f"{a},{b},{len(graph.provenance.get((a, b), []))}")
    return "\n".join(lines) + "\n"
