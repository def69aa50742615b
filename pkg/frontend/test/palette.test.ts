import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { colorForId, paletteFor } from "../src/palette.js";

describe("palette", () => {
  it("matches the server palette bit-for-bit on ids 1..64", () => {
    const fixture: Record<string, string> = JSON.parse(
      readFileSync(join(import.meta.dirname, "fixtures", "palette_fixture.json"), "utf-8"),
    );
    for (const [id, expected] of Object.entries(fixture)) {
      expect(colorForId(Number(id))).toBe(expected);
    }
  });

  it("is deterministic and distinct over 64 ids", () => {
    const palette = paletteFor(Array.from({ length: 64 }, (_, i) => i + 1));
    expect(new Set(palette.values()).size).toBe(64);
    expect(colorForId(7)).toBe(colorForId(7));
  });
});
