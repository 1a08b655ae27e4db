import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // The integration suite boots the real network service and runs a full
    // reduce, so hooks and tests get generous limits.
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
