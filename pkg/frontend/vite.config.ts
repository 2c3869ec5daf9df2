/// <reference types="vitest/config" />
import { defineConfig } from "vite";

export default defineConfig({
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8000",
    },
  },
  build: {
    outDir: "dist",
  },
  test: {
    environment: "jsdom",
    globalSetup: ["tests/setup/service.ts"],
    testTimeout: 20000,
    hookTimeout: 60000,
  },
});
