import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    globalSetup: ["test/globalSetup.ts"],
    testTimeout: 30000,
    hookTimeout: 60000,
    // board tests share one service; run files sequentially for stable ports
    fileParallelism: false,
  },
});
