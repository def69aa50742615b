/** Wire types for the workbench REST API. */

export interface CitedPaperDoc {
  id: string;
  title: string;
  citation_rationale?: string;
  span?: string;
}

export interface GroupDoc {
  group_name: string;
  group_rationale: string;
  cited_papers: CitedPaperDoc[];
}

/** Group index (as a string key) -> group body; the interchange format. */
export type GroupingsDoc = Record<string, GroupDoc>;

export interface CitationEntryDoc {
  id: number;
  title: string;
  abstract: string;
  authors: string[];
  year: number;
  url: string;
}

export interface BundleDoc {
  paper_id: string;
  title: string;
  abstract: string;
  introduction: string;
  related_work: string | null;
  conclusion: string;
  citations: CitationEntryDoc[];
}

export interface ProjectDoc {
  project_id: string;
  bundle: BundleDoc;
  groupings: GroupingsDoc | null;
  groupings_version: number;
  drafts: string[];
  drafts_version: number;
  condition_texts: Record<string, string>;
}

export interface GroupingsResponse {
  groupings: GroupingsDoc;
  version: number;
}

export interface DraftAnnexDoc {
  text: string;
  paragraph_count: number;
  group_count: number;
  cited_ids: number[];
  hallucinated_ids: number[];
  warnings: string[];
}

export interface EvaluationRowDoc {
  paper: string;
  condition: string;
  nodes: number;
  edges: number;
  avg_degree: number;
  density: number;
  clustering: number;
  unknown_ids: number[];
  citance_count: number;
}

export interface PairStatDoc {
  u: number;
  p: number;
  p_adjusted: number;
  method: string;
  n1: number;
  n2: number;
  degenerate: boolean;
}

export interface StatReportDoc {
  family: string;
  conditions: string[];
  metrics: Record<string, { means: Record<string, number>; pairs: Record<string, PairStatDoc> }>;
}

export interface EvaluationRunDoc {
  run_id: string;
  created_at: string;
  config: Record<string, string>;
  rows: EvaluationRowDoc[];
  report: StatReportDoc | null;
  note: string | null;
}

/** paper -> condition -> {dot, edges_csv} */
export type FiguresDoc = Record<string, Record<string, { dot: string; edges_csv?: string }>>;

export interface FiguresResponse {
  run_id: string;
  figures: FiguresDoc;
}
