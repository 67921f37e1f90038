import { defineConfig } from "vitest/config";

export default defineConfig({
  resolve: {
    // source files import each other with browser-style ".js" specifiers
    alias: [{ find: /^(\.{1,2}\/.*)\.js$/, replacement: "$1.ts" }],
  },
  test: {
    environment: "jsdom",
    include: ["test/**/*.test.ts"],
  },
});
