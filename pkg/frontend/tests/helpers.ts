import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import { App } from "../src/main";
import type { SolveResponse } from "../src/api";

const HERE = dirname(fileURLToPath(import.meta.url));

/** Load the real page markup into jsdom so tests drive the actual DOM. */
export function mountPage(): void {
  const html = readFileSync(join(HERE, "..", "index.html"), "utf-8");
  const body = html.match(/<body>([\s\S]*)<\/body>/)![1]
    .replace(/<script[\s\S]*?<\/script>/, "");
  document.body.innerHTML = body;
}

export function makeApp(responses: Array<{ status: number; body: unknown }>): {
  app: App;
  calls: Array<{ url: string; payload: Record<string, unknown> }>;
} {
  const calls: Array<{ url: string; payload: Record<string, unknown> }> = [];
  const queue = [...responses];
  const fetchMock = (async (url: RequestInfo | URL, init?: RequestInit) => {
    const payload = init?.body ? JSON.parse(String(init.body)) : {};
    calls.push({ url: String(url), payload });
    const next = queue.length ? queue.shift()! : { status: 500, body: { error: "exhausted" } };
    return {
      ok: next.status >= 200 && next.status < 300,
      status: next.status,
      json: async () => next.body,
    } as Response;
  }) as typeof fetch;
  const app = new App(document, fetchMock);
  app.bind();
  return { app, calls };
}

export function solveBody(n = 101, dt = 0.1): SolveResponse {
  const t = Array.from({ length: n }, (_, i) => i * dt);
  const u = t.map(() => 0);
  return { t, u, meta: { method: "pece" } };
}

export const TABLE2_CSV = `time,value
0.0,710.0
1.0,560.0
2.0,487.0
4.0,420.0
6.0,383.0
8.0,355.0
10.0,334.0
12.0,321.0
14.0,309.0
16.0,298.0
18.0,288.0
20.0,280.0
`;
