/** Evaluation dashboard against the live service: palette consistency across
 * condition panels and the metrics table layout. */

import { describe, expect, it } from "vitest";

import { buildDashboard, panelColors } from "../src/dashboard.js";
import { colorForId } from "../src/palette.js";
import { makeBundle, serviceClient, uniqueId } from "./helpers.js";

const CONDITION_TEXTS: Record<string, string> = {
  assisted: "Connected works [1] and [2] relate. Then [3], [4], and [5] cluster.",
  generated: "Alone [1]. Alone [2]. Alone [3]. Alone [4]. Alone [5].",
};

async function evaluatedRun() {
  const client = serviceClient();
  const projectIds: string[] = [];
  for (let i = 0; i < 2; i++) {
    const projectId = await client.createProject(makeBundle(uniqueId("dash"), 5));
    for (const [condition, text] of Object.entries(CONDITION_TEXTS)) {
      await client.setCondition(projectId, condition, text);
    }
    projectIds.push(projectId);
  }
  const run = await client.evaluate(projectIds, {});
  const figures = await client.getFigures(run.run_id);
  return { client, run, figures: figures.figures, projectIds };
}

describe("evaluation dashboard", () => {
  it("renders one panel per condition with id-stable colors", async () => {
    const { run, figures, projectIds } = await evaluatedRun();
    const model = buildDashboard(run, figures);

    for (const projectId of projectIds) {
      const panels = model.panels.get(projectId) ?? [];
      expect(panels.map((p) => p.condition)).toEqual(["human", "assisted", "generated"]);
      // every panel shows citation 1 in exactly the same color token
      const colors = panelColors(model, projectId, 1);
      expect(colors).toHaveLength(3);
      expect(new Set(colors).size).toBe(1);
      // and the local palette port agrees with the server's export
      expect(colors[0]).toBe(colorForId(1));
      for (const id of [2, 3, 4, 5]) {
        const perId = panelColors(model, projectId, id);
        expect(new Set(perId).size).toBe(1);
        expect(perId[0]).toBe(colorForId(id));
      }
    }
  });

  it("panels carry the concurrence edges from the server export", async () => {
    const { run, figures, projectIds } = await evaluatedRun();
    const model = buildDashboard(run, figures);
    const panels = model.panels.get(projectIds[0]) ?? [];
    const byCondition = Object.fromEntries(panels.map((p) => [p.condition, p]));
    expect(byCondition.generated.edges).toHaveLength(0);
    expect(byCondition.assisted.edges.length).toBeGreaterThanOrEqual(4); // pair + triangle
    expect(byCondition.human.nodes).toHaveLength(5);
  });

  it("metrics table shows means and U (p) cells per metric row", async () => {
    const { run, figures } = await evaluatedRun();
    const model = buildDashboard(run, figures);
    expect(model.metricsTable.map((r) => r.metric)).toEqual([
      "edges",
      "avg_degree",
      "density",
      "clustering",
    ]);
    for (const row of model.metricsTable) {
      expect(Object.keys(row.means).sort()).toEqual(["assisted", "generated", "human"]);
      const cells = Object.values(row.cells);
      expect(cells).toHaveLength(3);
      for (const cell of cells) {
        expect(cell).toMatch(/^\d+(\.\d)? \(\d\.\d{4}\)$/);
      }
    }
  });

  it("re-evaluating after a text change updates only that condition's panel", async () => {
    const { client, run, figures, projectIds } = await evaluatedRun();
    const model = buildDashboard(run, figures);
    const projectId = projectIds[0];

    await client.setCondition(projectId, "assisted", "Now [1], [2], [3], [4], and [5] all join.");
    const rerun = await client.evaluate(projectIds, {});
    const refigures = await client.getFigures(rerun.run_id);
    const remodel = buildDashboard(rerun, refigures.figures);

    const before = Object.fromEntries(
      (model.panels.get(projectId) ?? []).map((p) => [p.condition, p]),
    );
    const after = Object.fromEntries(
      (remodel.panels.get(projectId) ?? []).map((p) => [p.condition, p]),
    );
    expect(after.assisted.edges.length).toBe(10); // all five in one sentence
    expect(after.human.edges).toEqual(before.human.edges);
    expect(after.generated.edges).toEqual(before.generated.edges);
  });
});
