import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // the end-to-end tests spawn the Python service and wait for it to bind
    testTimeout: 60_000,
    hookTimeout: 60_000,
    fileParallelism: false,
  },
});
