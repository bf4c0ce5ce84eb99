/**
 * Payload shapes of the debtboard HTTP API.
 *
 * These mirror the JSON the service emits; the UI never derives a rank or a
 * percentage itself — anything displayed as a priority or a match rate was
 * sent by the server in one of these shapes.
 */

export type Level = "high" | "medium" | "low";
export type ProcessType = "core-support" | "other";
export type AssetState = "operational" | "to-be-operational";
export type Metric = "criticality" | "urgency";

export interface RuleCell {
  processType: ProcessType;
  assetState: AssetState;
  rank: number;
}

export interface RuleTableDoc {
  cells: RuleCell[];
}

export interface ProcessElementDoc {
  id: string;
  name: string;
  priority?: Level;
  criticality?: Level;
}

export interface ProcessDoc {
  id: string;
  name: string;
  type: ProcessType;
  criticality: Level;
  urgency: Level;
  elements?: ProcessElementDoc[];
  overallPriority?: Level;
}

export interface AssetDoc {
  id: string;
  name: string;
  state: AssetState;
  supports: string[];
}

export interface DebtItemDoc {
  id: string;
  title: string;
  description?: string;
  affects: string[];
  createdAt: string;
  technicalPriority?: Level;
  debtTypeLabel?: string;
}

export interface MetricAttachmentDoc {
  metric: { id: string; name: string; horizon: string };
  subject: string;
}

export interface ValueMapDoc {
  horizons: string[];
  attachments: MetricAttachmentDoc[];
}

export interface RegistryDoc {
  formatVersion: number;
  processes: ProcessDoc[];
  assets: AssetDoc[];
  backlog: { id: string; items: DebtItemDoc[] };
  ruleTable: RuleTableDoc;
  valueMap: ValueMapDoc;
}

export interface RegistryResponse {
  snapshot: number;
  document: RegistryDoc;
}

export interface BacklogRow {
  position: number;
  itemId: string;
  title: string;
  rank: number;
  technicalPriority: Level | null;
  createdAt: string;
  decisiveAsset: { id: string; name: string };
  decisiveProcess: { id: string; name: string } | null;
  decisiveCell: { processType: ProcessType; assetState: AssetState };
}

export interface BacklogResponse {
  snapshot: number;
  items: BacklogRow[];
}

export interface ImpactResponse {
  snapshot: number;
  itemId: string;
  horizons: string[];
  profile: Record<string, string[]>;
  recommendation: string | null;
}

export interface LevelStats {
  matched: number;
  total: number;
  percent: string; // server-rendered, e.g. "34.8" or "n/a"
}

export interface AlignmentResponse {
  snapshot: number;
  metric: Metric;
  perLevel: Record<Level, LevelStats>;
  total: LevelStats;
  confusion: Record<Level, Record<Level, number>>;
  misalignments: { itemId: string; technical: Level; business: Level }[];
}

export interface WhatIfEntry {
  itemId: string;
  oldRank: number;
  newRank: number;
  oldPosition: number;
  newPosition: number;
  positionDelta: number;
}

export interface WhatIfResponse {
  snapshot: number;
  entries: WhatIfEntry[];
  movedCount: number;
}

export interface Finding {
  severity: "error" | "warning";
  entityId: string;
  message: string;
}

export interface ValidationResponse {
  snapshot: number;
  ok: boolean;
  findings: Finding[];
}

export interface MutationResponse {
  snapshot: number;
  warnings: Finding[];
}
