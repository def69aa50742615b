export { ApiError, CoverageRejected, VersionConflict, WorkbenchClient } from "./api.js";
export { GroupingBoard } from "./board.js";
export type { BoardGroup, BoardPaper, ConflictState, SaveResult } from "./board.js";
export { buildDashboard, panelColors, parseDot, parseEdgeCsv } from "./dashboard.js";
export type { DashboardModel, GraphPanel, MetricRow, PanelEdge, PanelNode } from "./dashboard.js";
export { buildDraftView } from "./draft.js";
export type { DraftParagraph, DraftView } from "./draft.js";
export { colorForId, paletteFor } from "./palette.js";
export type * from "./types.js";
