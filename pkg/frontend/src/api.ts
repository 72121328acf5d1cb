// Thin typed client for the completeness store API. Every piece of
// completeness state shown in the UI comes from these calls; nothing is
// inferred client-side.

import type {
  EntityViewOut,
  ProvenanceForm,
  QueryResponse,
  SearchHit,
  StatementOut,
} from "./types.js";

let apiBase = "/api/v1";

export function setApiBase(base: string): void {
  apiBase = base.replace(/\/$/, "");
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(apiBase + path, init);
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(response.status, detail);
  }
  if (response.status === 204) return undefined as T;
  return (await response.json()) as T;
}

export function searchEntities(prefix: string, limit = 8): Promise<SearchHit[]> {
  const params = new URLSearchParams({ q: prefix, limit: String(limit) });
  return request<SearchHit[]>(`/search?${params}`);
}

export function getEntity(iri: string): Promise<EntityViewOut> {
  return request<EntityViewOut>(`/entity/${iri}`);
}

export function addStatement(
  subject: string,
  predicate: string,
  provenance: ProvenanceForm = {},
): Promise<{ id: string }> {
  return request<{ id: string }>(`/statement`, {
    method: "PUT",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({
      subject,
      predicate,
      author: provenance.author || null,
      reference: provenance.reference || null,
    }),
  });
}

export function removeStatement(subject: string, predicate: string): Promise<void> {
  const params = new URLSearchParams({ subject, predicate });
  return request<void>(`/statement?${params}`, { method: "DELETE" });
}

export function listStatements(predicate?: string): Promise<StatementOut[]> {
  const params = new URLSearchParams();
  if (predicate) params.set("predicate", predicate);
  const suffix = params.size > 0 ? `?${params}` : "";
  return request<StatementOut[]>(`/statements${suffix}`);
}

export function runQuery(query: string): Promise<QueryResponse> {
  return request<QueryResponse>(`/query`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ query }),
  });
}
