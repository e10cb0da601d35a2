import type { ProblemParams, SolveMethod } from "./defaults";

export interface SolveResponse {
  t: number[];
  u: number[];
  meta: Record<string, unknown>;
}

/** Server-reported failure (validation 400, expression 422, internal 5xx). */
export class ApiError extends Error {
  readonly status: number;
  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

export async function solve(
  params: ProblemParams,
  method: SolveMethod,
  fetchImpl: typeof fetch = fetch,
): Promise<SolveResponse> {
  const response = await fetchImpl("/api/solve", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ ...params, method }),
  });
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    body = null;
  }
  if (!response.ok) {
    const message =
      body && typeof body === "object" && "error" in body
        ? String((body as { error: unknown }).error)
        : `request failed with status ${response.status}`;
    throw new ApiError(response.status, message);
  }
  const doc = body as SolveResponse;
  if (!doc || !Array.isArray(doc.t) || !Array.isArray(doc.u)) {
    throw new ApiError(502, "malformed solve response");
  }
  return doc;
}
