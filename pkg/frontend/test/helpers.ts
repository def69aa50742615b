import { inject } from "vitest";

import { WorkbenchClient } from "../src/api.js";
import type { BundleDoc, GroupingsDoc } from "../src/types.js";

export function serviceClient(): WorkbenchClient {
  return new WorkbenchClient(inject("baseUrl"));
}

let counter = 0;

export function uniqueId(prefix: string): string {
  counter += 1;
  return `${prefix}-${process.pid}-${counter}`;
}

export function makeBundle(paperId: string, nCitations = 5): BundleDoc {
  return {
    paper_id: paperId,
    title: `Frontend Test Paper ${paperId}`,
    abstract: "An abstract for the board tests.",
    introduction: "An introduction.",
    related_work: "Works [1] and [2] connect. Works [3], [4], and [5] cluster.",
    conclusion: "A conclusion.",
    citations: Array.from({ length: nCitations }, (_, i) => ({
      id: i + 1,
      title: `Cited work ${i + 1}`,
      abstract: `Abstract ${i + 1}.`,
      authors: [`Author ${i + 1}`],
      year: 2020 + i,
      url: "",
    })),
  };
}

export function initialGroupings(): GroupingsDoc {
  return {
    "1": {
      group_name: "Background",
      group_rationale: "Foundational works.",
      cited_papers: [
        { id: "1", title: "Cited work 1" },
        { id: "2", title: "Cited work 2" },
        { id: "3", title: "Cited work 3" },
      ],
    },
    "2": {
      group_name: "Applications",
      group_rationale: "Applied works.",
      cited_papers: [
        { id: "4", title: "Cited work 4" },
        { id: "5", title: "Cited work 5" },
      ],
    },
  };
}
