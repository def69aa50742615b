/** Evaluation dashboard: per-condition graph panels with id-stable colors and
 * the metric table (condition means plus "U (p)" cells). */

import { colorForId } from "./palette.js";
import type { EvaluationRunDoc, FiguresDoc } from "./types.js";

export interface PanelNode {
  id: number;
  label: string;
  color: string;
}

export interface PanelEdge {
  source: number;
  target: number;
  provenanceCount: number;
}

export interface GraphPanel {
  paper: string;
  condition: string;
  nodes: PanelNode[];
  edges: PanelEdge[];
}

export interface MetricRow {
  metric: string;
  label: string;
  means: Record<string, number>;
  cells: Record<string, string>; // pair key -> "U (p)" text
}

export interface DashboardModel {
  runId: string;
  conditions: string[];
  panels: Map<string, GraphPanel[]>; // paper -> one panel per condition
  metricsTable: MetricRow[];
  note: string | null;
}

const NODE_LINE = /^\s*(\d+)\s+\[label="(\[[0-9]+\])" fillcolor="(#[0-9a-f]{6})"\];$/;
const EDGE_LINE = /^\s*(\d+)\s+--\s+(\d+);$/;

/** Parse the server's DOT export into panel nodes/edges, keeping its colors. */
export function parseDot(dot: string): { nodes: PanelNode[]; edges: PanelEdge[] } {
  const nodes: PanelNode[] = [];
  const edges: PanelEdge[] = [];
  for (const line of dot.split("\n")) {
    const nodeMatch = NODE_LINE.exec(line);
    if (nodeMatch) {
      nodes.push({ id: Number(nodeMatch[1]), label: nodeMatch[2], color: nodeMatch[3] });
      continue;
    }
    const edgeMatch = EDGE_LINE.exec(line);
    if (edgeMatch) {
      edges.push({ source: Number(edgeMatch[1]), target: Number(edgeMatch[2]), provenanceCount: 1 });
    }
  }
  return { nodes, edges };
}

export function parseEdgeCsv(csv: string): PanelEdge[] {
  const lines = csv.trim().split("\n");
  return lines.slice(1).map((line) => {
    const [source, target, count] = line.split(",");
    return { source: Number(source), target: Number(target), provenanceCount: Number(count) };
  });
}

const METRIC_LABELS: Record<string, string> = {
  edges: "Number of edges",
  avg_degree: "Average node degree",
  density: "Density",
  clustering: "Cluster coefficient",
};

export function buildDashboard(run: EvaluationRunDoc, figures?: FiguresDoc): DashboardModel {
  const conditions = run.report?.conditions ?? ["human", "assisted", "generated"];
  const panels = new Map<string, GraphPanel[]>();
  for (const row of run.rows) {
    const figure = figures?.[row.paper]?.[row.condition];
    let nodes: PanelNode[] = [];
    let edges: PanelEdge[] = [];
    if (figure) {
      const parsed = parseDot(figure.dot);
      nodes = parsed.nodes;
      edges = figure.edges_csv ? parseEdgeCsv(figure.edges_csv) : parsed.edges;
    }
    // panels color locally when the server export is absent
    for (const node of nodes) if (!node.color) node.color = colorForId(node.id);
    const panel: GraphPanel = { paper: row.paper, condition: row.condition, nodes, edges };
    const list = panels.get(row.paper) ?? [];
    list.push(panel);
    panels.set(row.paper, list);
  }
  for (const list of panels.values()) {
    list.sort(
      (a, b) => conditions.indexOf(a.condition) - conditions.indexOf(b.condition),
    );
  }

  const metricsTable: MetricRow[] = [];
  if (run.report) {
    for (const [metric, block] of Object.entries(run.report.metrics)) {
      const cells: Record<string, string> = {};
      for (const [pair, stat] of Object.entries(block.pairs)) {
        cells[pair] = `${stat.u.toFixed(1)} (${stat.p_adjusted.toFixed(4)})`;
      }
      metricsTable.push({
        metric,
        label: METRIC_LABELS[metric] ?? metric,
        means: block.means,
        cells,
      });
    }
  }
  return { runId: run.run_id, conditions, panels, metricsTable, note: run.note };
}

/** The color a citation id renders with, across every panel of a paper. */
export function panelColors(model: DashboardModel, paper: string, id: number): string[] {
  const list = model.panels.get(paper) ?? [];
  const colors: string[] = [];
  for (const panel of list) {
    const node = panel.nodes.find((n) => n.id === id);
    if (node) colors.push(node.color);
  }
  return colors;
}
