/** Draft editor view model: paragraphs annotated with their originating group,
 * hallucination flags surfaced from the validation annex. */

import type { DraftAnnexDoc, GroupingsDoc } from "./types.js";

export interface DraftParagraph {
  text: string;
  /** Group name shown as an annotation when paragraph order matches groups. */
  groupName: string | null;
  citedIds: number[];
  flaggedIds: number[];
}

export interface DraftView {
  text: string;
  paragraphs: DraftParagraph[];
  hallucinatedIds: number[];
  warnings: string[];
  paragraphMismatch: boolean;
}

const CITATION_RE = /\[(\d+)\]/g;

function citedIn(text: string): number[] {
  const ids = new Set<number>();
  for (const match of text.matchAll(CITATION_RE)) ids.add(Number(match[1]));
  return [...ids].sort((a, b) => a - b);
}

export function buildDraftView(annex: DraftAnnexDoc, groupings: GroupingsDoc): DraftView {
  const paragraphs = annex.text
    .split(/\n\s*\n/)
    .map((p) => p.trim())
    .filter((p) => p.length > 0);
  const groupNames = Object.keys(groupings)
    .sort((a, b) => Number(a) - Number(b))
    .map((key) => groupings[key].group_name);
  const mismatch = paragraphs.length !== groupNames.length;
  const flagged = new Set(annex.hallucinated_ids);
  return {
    text: annex.text,
    paragraphs: paragraphs.map((text, i) => {
      const cited = citedIn(text);
      return {
        text,
        groupName: mismatch ? null : groupNames[i],
        citedIds: cited,
        flaggedIds: cited.filter((id) => flagged.has(id)),
      };
    }),
    hallucinatedIds: [...annex.hallucinated_ids].sort((a, b) => a - b),
    warnings: annex.warnings,
    paragraphMismatch: mismatch,
  };
}
