/**
 * Typed client for the debtboard service.
 *
 * All mutations go through `mutate`, which sends the snapshot the edit was
 * based on as an If-Match header. The server answers 409 when that snapshot
 * is stale, 400 with a findings list when the edit would leave the registry
 * invalid — both surface here as ApiError so callers can branch on status.
 */

import type {
  AlignmentResponse,
  AssetDoc,
  BacklogResponse,
  Finding,
  ImpactResponse,
  Metric,
  MutationResponse,
  ProcessDoc,
  RegistryResponse,
  RuleTableDoc,
  ValidationResponse,
  ValueMapDoc,
  WhatIfResponse,
} from "./types.js";

export interface ErrorDetail {
  message?: string;
  snapshot?: number;
  findings?: Finding[];
  problems?: string[];
  itemIds?: string[];
}

export class ApiError extends Error {
  readonly status: number;
  readonly detail: ErrorDetail;

  constructor(status: number, detail: ErrorDetail) {
    super(detail.message ?? `request failed with status ${status}`);
    this.name = "ApiError";
    this.status = status;
    this.detail = detail;
  }
}

/** Base URL prefix; empty when the bundle is served by the service itself. */
export let baseUrl = "";

export function setBaseUrl(url: string): void {
  baseUrl = url.replace(/\/$/, "");
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(baseUrl + path, init);
  if (!response.ok) {
    let detail: ErrorDetail = {};
    try {
      const body = (await response.json()) as { detail?: ErrorDetail };
      detail = body.detail ?? (body as ErrorDetail);
    } catch {
      detail = { message: response.statusText };
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function fetchRegistry(): Promise<RegistryResponse> {
  return request("/api/registry");
}

export function fetchValidation(): Promise<ValidationResponse> {
  return request("/api/validation");
}

export function fetchBacklog(): Promise<BacklogResponse> {
  return request("/api/backlog");
}

export function fetchImpact(itemId: string): Promise<ImpactResponse> {
  return request(`/api/items/${encodeURIComponent(itemId)}/impact`);
}

export function fetchAlignment(metric: Metric): Promise<AlignmentResponse> {
  return request(`/api/alignment?metric=${metric}`);
}

/** Server-rendered canvas bytes, plus the snapshot they were rendered at. */
export async function fetchCanvasSvg(
  which: "prioritization" | "business-value",
): Promise<{ snapshot: number; svg: string }> {
  const response = await fetch(
    `${baseUrl}/api/canvas/${which}?format=vector-image`,
  );
  if (!response.ok) {
    throw new ApiError(response.status, { message: response.statusText });
  }
  const snapshot = Number(response.headers.get("X-Snapshot") ?? "0");
  return { snapshot, svg: await response.text() };
}

export function postWhatIf(table: RuleTableDoc): Promise<WhatIfResponse> {
  return request("/api/what-if", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(table),
  });
}

function mutate(
  method: "PUT" | "DELETE",
  path: string,
  ifMatch: number,
  body?: unknown,
): Promise<MutationResponse> {
  const init: RequestInit = {
    method,
    headers: { "If-Match": String(ifMatch) },
  };
  if (body !== undefined) {
    init.headers = {
      ...(init.headers as Record<string, string>),
      "Content-Type": "application/json",
    };
    init.body = JSON.stringify(body);
  }
  return request(path, init);
}

export function putProcess(
  doc: ProcessDoc,
  ifMatch: number,
): Promise<MutationResponse> {
  return mutate(
    "PUT",
    `/api/processes/${encodeURIComponent(doc.id)}`,
    ifMatch,
    doc,
  );
}

export function putAsset(
  doc: AssetDoc,
  ifMatch: number,
): Promise<MutationResponse> {
  return mutate("PUT", `/api/assets/${encodeURIComponent(doc.id)}`, ifMatch, doc);
}

export function putRuleTable(
  table: RuleTableDoc,
  ifMatch: number,
): Promise<MutationResponse> {
  return mutate("PUT", "/api/rule-table", ifMatch, table);
}

export function putValueMap(
  valueMap: ValueMapDoc,
  ifMatch: number,
): Promise<MutationResponse> {
  return mutate("PUT", "/api/value-map", ifMatch, valueMap);
}

export function deleteItem(
  itemId: string,
  ifMatch: number,
): Promise<MutationResponse> {
  return mutate("DELETE", `/api/items/${encodeURIComponent(itemId)}`, ifMatch);
}
