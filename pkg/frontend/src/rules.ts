/**
 * Client-side checks for rule-table drafts.
 *
 * The service is the arbiter — it re-validates every submitted table — but
 * the what-if editor flags problems inline so a draft that can only be
 * rejected is never submittable in the first place.
 */

import type { AssetState, ProcessType, RuleCell, RuleTableDoc } from "./types.js";

export const PROCESS_TYPES: ProcessType[] = ["core-support", "other"];
export const ASSET_STATES: AssetState[] = ["operational", "to-be-operational"];

export type CellKey = `${ProcessType}/${AssetState}`;

export function cellKey(processType: ProcessType, assetState: AssetState): CellKey {
  return `${processType}/${assetState}`;
}

/** Draft ranks keyed by cell; empty string = not filled in yet. */
export type DraftTable = Record<CellKey, string>;

export function draftFromTable(table: RuleTableDoc): DraftTable {
  const draft = emptyDraft();
  for (const cell of table.cells) {
    draft[cellKey(cell.processType, cell.assetState)] = String(cell.rank);
  }
  return draft;
}

export function emptyDraft(): DraftTable {
  return {
    "core-support/operational": "",
    "core-support/to-be-operational": "",
    "other/operational": "",
    "other/to-be-operational": "",
  };
}

export interface DraftProblem {
  /** Cells the problem is anchored to, for inline highlighting. */
  cells: CellKey[];
  message: string;
}

/**
 * Everything that would make the draft unsubmittable: missing or
 * non-positive-integer ranks (totality), and any column where the
 * other-process rank beats the core/support rank (dominance).
 */
export function draftProblems(draft: DraftTable): DraftProblem[] {
  const problems: DraftProblem[] = [];
  const ranks: Partial<Record<CellKey, number>> = {};

  for (const processType of PROCESS_TYPES) {
    for (const assetState of ASSET_STATES) {
      const key = cellKey(processType, assetState);
      const raw = draft[key].trim();
      if (raw === "") {
        problems.push({ cells: [key], message: `missing rank for ${key}` });
        continue;
      }
      const value = Number(raw);
      if (!Number.isInteger(value) || value < 1) {
        problems.push({
          cells: [key],
          message: `rank for ${key} must be a positive integer`,
        });
        continue;
      }
      ranks[key] = value;
    }
  }

  for (const assetState of ASSET_STATES) {
    const core = ranks[cellKey("core-support", assetState)];
    const other = ranks[cellKey("other", assetState)];
    if (core !== undefined && other !== undefined && core > other) {
      problems.push({
        cells: [cellKey("core-support", assetState), cellKey("other", assetState)],
        message: `core/support must not rank behind other processes for ${assetState} assets (${core} > ${other})`,
      });
    }
  }

  return problems;
}

export function canSubmit(draft: DraftTable): boolean {
  return draftProblems(draft).length === 0;
}

/** A submittable draft as the wire shape shared with the service. */
export function tableFromDraft(draft: DraftTable): RuleTableDoc {
  const cells: RuleCell[] = [];
  for (const processType of PROCESS_TYPES) {
    for (const assetState of ASSET_STATES) {
      cells.push({
        processType,
        assetState,
        rank: Number(draft[cellKey(processType, assetState)]),
      });
    }
  }
  return { cells };
}

export function sameTable(a: DraftTable, b: DraftTable): boolean {
  return (Object.keys(a) as CellKey[]).every(
    (key) => a[key].trim() === b[key].trim(),
  );
}
