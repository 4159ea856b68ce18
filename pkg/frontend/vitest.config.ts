import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // the e2e file boots a real server; give it room
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
