/**
 * What-if panel: edit a candidate rule table, preview the re-ordered backlog
 * the service computes for it, then apply it for real.
 *
 * The diff shown is exactly the /api/what-if response body — the panel adds
 * highlighting, not arithmetic. A draft with problems (missing cells,
 * non-positive ranks, dominance violations) renders its submit controls
 * disabled and the offending cells flagged.
 */

import { escapeHtml } from "./boards.js";
import {
  ASSET_STATES,
  PROCESS_TYPES,
  cellKey,
  draftProblems,
  sameTable,
  type CellKey,
  type DraftTable,
} from "./rules.js";
import type { WhatIfResponse } from "./types.js";

const CELL_LABELS: Record<CellKey, string> = {
  "core-support/operational": "core/support × operational",
  "core-support/to-be-operational": "core/support × to-be operational",
  "other/operational": "other × operational",
  "other/to-be-operational": "other × to-be operational",
};

export function renderWhatIfEditor(draft: DraftTable, current: DraftTable): string {
  const problems = draftProblems(draft);
  const flagged = new Set<CellKey>(problems.flatMap((p) => p.cells));

  const headerCells = ASSET_STATES.map((s) => `<th>${s}</th>`).join("");
  const rows = PROCESS_TYPES.map((processType) => {
    const cells = ASSET_STATES.map((assetState) => {
      const key = cellKey(processType, assetState);
      const cls = flagged.has(key) ? ' class="cell-problem"' : "";
      return `<td${cls}><input type="text" inputmode="numeric" size="3" data-cell="${key}" value="${escapeHtml(draft[key])}" aria-label="${escapeHtml(CELL_LABELS[key])}"></td>`;
    }).join("");
    return `<tr><th scope="row">${processType}</th>${cells}</tr>`;
  }).join("\n");

  const problemList =
    problems.length > 0
      ? `<ul class="draft-problems">` +
        problems.map((p) => `<li>${escapeHtml(p.message)}</li>`).join("\n") +
        `</ul>`
      : "";
  const unchanged = sameTable(draft, current)
    ? `<p class="empty-hint">Draft equals the active table.</p>`
    : "";
  const disabled = problems.length > 0 ? " disabled" : "";

  return `<table class="rule-editor">
<thead><tr><th></th>${headerCells}</tr></thead>
<tbody>
${rows}
</tbody>
</table>
${problemList}
${unchanged}
<div class="whatif-actions">
<button type="button" data-action="preview"${disabled}>Preview ordering</button>
<button type="button" data-action="apply"${disabled}>Apply table</button>
</div>`;
}

/** Side-by-side ordering diff; movers highlighted with their deltas. */
export function renderWhatIfDiff(response: WhatIfResponse): string {
  if (response.entries.length === 0) {
    return `<p class="empty-hint">The backlog is empty — nothing to reorder.</p>`;
  }
  if (response.movedCount === 0) {
    return `<p class="empty-hint">No position changes under this table.</p>`;
  }
  const rows = response.entries
    .map((entry) => {
      const moved = entry.positionDelta !== 0;
      const cls = moved ? ' class="moved"' : "";
      const delta =
        entry.positionDelta > 0
          ? `<span class="delta up">&uarr; ${entry.positionDelta}</span>`
          : entry.positionDelta < 0
            ? `<span class="delta down">&darr; ${-entry.positionDelta}</span>`
            : "";
      return `<tr${cls} data-item="${escapeHtml(entry.itemId)}">
  <td>${entry.newPosition}</td>
  <td><code>${escapeHtml(entry.itemId)}</code></td>
  <td>${entry.oldPosition}</td>
  <td>${entry.oldRank} &rarr; ${entry.newRank}</td>
  <td>${delta}</td>
</tr>`;
    })
    .join("\n");
  return `<p>${response.movedCount} item(s) would move.</p>
<table class="diff-table">
<thead><tr><th>New #</th><th>Item</th><th>Old #</th><th>Rank</th><th>Δ</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>`;
}
