/** Grouping board state: optimistic local edits over the server's grouping
 * document, version-tagged saves, and coverage surfacing.
 *
 * Edits mutate local state immediately; save() PUTs the whole document with
 * the version tag. A 409 parks the board in a conflict state for the
 * reload-and-merge dialog. Coverage violations are allowed locally but block
 * draft generation and raise a warning banner. */

import { CoverageRejected, VersionConflict, WorkbenchClient } from "./api.js";
import type { GroupingsDoc } from "./types.js";

export interface BoardPaper {
  id: number;
  title: string;
  citationRationale?: string;
  span?: string;
}

export interface BoardGroup {
  index: number;
  name: string;
  rationale: string;
  papers: BoardPaper[];
}

export type SaveResult =
  | { status: "saved"; version: number }
  | { status: "conflict"; currentVersion: number }
  | { status: "coverage-rejected"; uncovered: number[] };

export interface ConflictState {
  currentVersion: number;
  localDoc: GroupingsDoc;
}

export class GroupingBoard {
  groups = new Map<number, BoardGroup>();
  corpusIds = new Set<number>();
  titles = new Map<number, string>();
  version = 0;
  dirty = false;
  conflict: ConflictState | null = null;

  static fromDoc(
    doc: GroupingsDoc,
    version: number,
    corpus: { id: number; title: string }[],
  ): GroupingBoard {
    const board = new GroupingBoard();
    board.corpusIds = new Set(corpus.map((c) => c.id));
    board.titles = new Map(corpus.map((c) => [c.id, c.title]));
    board.loadDoc(doc, version);
    return board;
  }

  loadDoc(doc: GroupingsDoc, version: number): void {
    this.groups.clear();
    for (const key of Object.keys(doc)) {
      const index = Number(key);
      const body = doc[key];
      this.groups.set(index, {
        index,
        name: body.group_name,
        rationale: body.group_rationale,
        papers: body.cited_papers.map((p) => ({
          id: Number(p.id),
          title: p.title,
          citationRationale: p.citation_rationale,
          span: p.span,
        })),
      });
    }
    this.version = version;
    this.dirty = false;
    this.conflict = null;
  }

  toDoc(): GroupingsDoc {
    const doc: GroupingsDoc = {};
    for (const index of [...this.groups.keys()].sort((a, b) => a - b)) {
      const group = this.groups.get(index)!;
      doc[String(index)] = {
        group_name: group.name,
        group_rationale: group.rationale,
        cited_papers: group.papers.map((p) => {
          const entry: GroupingsDoc[string]["cited_papers"][number] = {
            id: String(p.id),
            title: p.title,
          };
          if (p.citationRationale !== undefined) entry.citation_rationale = p.citationRationale;
          if (p.span !== undefined) entry.span = p.span;
          return entry;
        }),
      };
    }
    return doc;
  }

  // --- coverage ---------------------------------------------------------------

  coveredIds(): Set<number> {
    const ids = new Set<number>();
    for (const group of this.groups.values()) for (const p of group.papers) ids.add(p.id);
    return ids;
  }

  coverageGaps(): number[] {
    const covered = this.coveredIds();
    return [...this.corpusIds].filter((id) => !covered.has(id)).sort((a, b) => a - b);
  }

  /** Banner text listing uncovered ids, or null when coverage holds. */
  warningBanner(): string | null {
    const gaps = this.coverageGaps();
    if (gaps.length === 0) return null;
    return `uncovered: [${gaps.join(", ")}]`;
  }

  canGenerateDraft(): boolean {
    return this.coverageGaps().length === 0;
  }

  // --- edits ------------------------------------------------------------------

  private group(index: number): BoardGroup {
    const group = this.groups.get(index);
    if (!group) throw new Error(`no group ${index}`);
    return group;
  }

  private paperEntry(id: number): BoardPaper {
    for (const group of this.groups.values()) {
      const found = group.papers.find((p) => p.id === id);
      if (found) return { ...found };
    }
    return { id, title: this.titles.get(id) ?? "" };
  }

  moveCitation(id: number, fromGroup: number, toGroup: number): void {
    const source = this.group(fromGroup);
    const position = source.papers.findIndex((p) => p.id === id);
    if (position === -1) throw new Error(`citation ${id} is not in group ${fromGroup}`);
    const [paper] = source.papers.splice(position, 1);
    const target = this.group(toGroup);
    if (!target.papers.some((p) => p.id === id)) target.papers.push(paper);
    this.dirty = true;
  }

  /** Multi-membership: the citation stays in its source group too. */
  duplicateCitation(id: number, intoGroup: number): void {
    const target = this.group(intoGroup);
    if (target.papers.some((p) => p.id === id)) return;
    target.papers.push(this.paperEntry(id));
    this.dirty = true;
  }

  removeCitation(id: number, fromGroup: number): void {
    const group = this.group(fromGroup);
    const position = group.papers.findIndex((p) => p.id === id);
    if (position === -1) throw new Error(`citation ${id} is not in group ${fromGroup}`);
    group.papers.splice(position, 1);
    this.dirty = true;
  }

  addGroup(name: string, rationale = ""): number {
    const index = this.groups.size ? Math.max(...this.groups.keys()) + 1 : 1;
    this.groups.set(index, { index, name, rationale, papers: [] });
    this.dirty = true;
    return index;
  }

  removeGroup(index: number): void {
    if (!this.groups.delete(index)) throw new Error(`no group ${index}`);
    this.dirty = true;
  }

  renameGroup(index: number, name: string): void {
    this.group(index).name = name;
    this.dirty = true;
  }

  editGroupRationale(index: number, rationale: string): void {
    this.group(index).rationale = rationale;
    this.dirty = true;
  }

  editCitationRationale(groupIndex: number, id: number, rationale: string): void {
    const paper = this.group(groupIndex).papers.find((p) => p.id === id);
    if (!paper) throw new Error(`citation ${id} is not in group ${groupIndex}`);
    paper.citationRationale = rationale;
    this.dirty = true;
  }

  // --- persistence --------------------------------------------------------------

  async save(client: WorkbenchClient, projectId: string): Promise<SaveResult> {
    const doc = this.toDoc();
    try {
      const version = await client.putGroupings(projectId, doc, this.version);
      this.version = version;
      this.dirty = false;
      this.conflict = null;
      return { status: "saved", version };
    } catch (error) {
      if (error instanceof VersionConflict) {
        this.conflict = { currentVersion: error.currentVersion, localDoc: doc };
        return { status: "conflict", currentVersion: error.currentVersion };
      }
      if (error instanceof CoverageRejected) {
        return { status: "coverage-rejected", uncovered: error.uncovered };
      }
      throw error;
    }
  }

  /** Conflict resolution: drop local edits and adopt the server state. */
  async resolveConflictTakeServer(client: WorkbenchClient, projectId: string): Promise<void> {
    const server = await client.getGroupings(projectId);
    this.loadDoc(server.groupings, server.version);
  }

  /** Conflict resolution: re-apply the local document on the server's version. */
  async resolveConflictReapplyLocal(
    client: WorkbenchClient,
    projectId: string,
  ): Promise<SaveResult> {
    if (!this.conflict) throw new Error("no conflict to resolve");
    this.version = this.conflict.currentVersion;
    this.conflict = null;
    return this.save(client, projectId);
  }

  async refresh(client: WorkbenchClient, projectId: string): Promise<void> {
    const server = await client.getGroupings(projectId);
    this.loadDoc(server.groupings, server.version);
  }
}
