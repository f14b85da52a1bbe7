/** Typed API client plus the stale-response guard.
 *
 * Every number shown in the UI originates from these responses; nothing is
 * recomputed client-side. Requests that can be superseded by a newer user
 * selection go through a LatestGate: the caller takes a token before firing
 * and drops the response if the token is no longer current when it lands.
 */

import type {
  PatientSummary,
  SimilarityRequest,
  SimilarityResponse,
  StudyFacets,
  StudySummary,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function request<T>(
  url: string,
  init: RequestInit = {},
  signal?: AbortSignal,
): Promise<T> {
  const response = await fetch(url, { ...init, signal });
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // error responses are always JSON; a non-JSON body falls through below
  }
  if (!response.ok) {
    const err = (body ?? {}) as { error?: string; detail?: string };
    throw new ApiError(
      response.status,
      err.error ?? "http_error",
      err.detail ?? `request failed with status ${response.status}`,
    );
  }
  return body as T;
}

export interface ApiClient {
  listStudies(signal?: AbortSignal): Promise<StudySummary[]>;
  studyFacets(studyId: string, signal?: AbortSignal): Promise<StudyFacets>;
  listPatients(signal?: AbortSignal): Promise<PatientSummary[]>;
  similarity(
    body: SimilarityRequest,
    signal?: AbortSignal,
  ): Promise<SimilarityResponse>;
}

export const httpApi: ApiClient = {
  listStudies: (signal) => request("/api/studies", {}, signal),
  studyFacets: (studyId, signal) =>
    request(`/api/studies/${encodeURIComponent(studyId)}/facets`, {}, signal),
  listPatients: (signal) => request("/api/patients", {}, signal),
  similarity: (body, signal) =>
    request(
      "/api/similarity",
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      },
      signal,
    ),
};

/** Monotonic token source; only the most recently issued token is current. */
export class LatestGate {
  private seq = 0;

  issue(): number {
    return ++this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}

export function isAbortError(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}
