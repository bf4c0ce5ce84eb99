// Read-only panels: prioritized backlog, impact profile, alignment report.
// Every number shown here (rank, position, match counts, percentages) is
// taken verbatim from the API response.

import { escapeHtml } from "./boards.js";
import type {
  AlignmentResponse,
  BacklogRow,
  ImpactResponse,
  Level,
} from "./types.js";

const LEVELS: Level[] = ["high", "medium", "low"];

export function renderBacklog(rows: BacklogRow[]): string {
  if (rows.length === 0) {
    return `<p class="empty-hint">The backlog is empty — import items from your tracker or add them through the API.</p>`;
  }
  const body = rows
    .map((row) => {
      const via = row.decisiveProcess
        ? `${row.decisiveAsset.name} &rarr; ${escapeHtml(row.decisiveProcess.name)}`
        : `${row.decisiveAsset.name} &rarr; <em>no process</em>`;
      const technical = row.technicalPriority ?? "—";
      return `<tr data-item="${escapeHtml(row.itemId)}">
  <td class="pos">${row.position}</td>
  <td><span class="rank rank-${row.rank}">${row.rank}</span></td>
  <td class="title"><a href="#" data-action="impact" data-item="${escapeHtml(row.itemId)}">${escapeHtml(row.title)}</a></td>
  <td>${technical}</td>
  <td class="via" title="${escapeHtml(`${row.decisiveCell.processType} × ${row.decisiveCell.assetState}`)}">${via}</td>
</tr>`;
    })
    .join("\n");
  return `<table class="backlog-table">
<thead><tr><th>#</th><th>Rank</th><th>Item</th><th>Technical</th><th>Decisive link</th></tr></thead>
<tbody>
${body}
</tbody>
</table>`;
}

export function renderImpact(impact: ImpactResponse, title: string): string {
  const rows = impact.horizons
    .map((label) => {
      const names = impact.profile[label] ?? [];
      const cell = names.length > 0
        ? names.map((n) => `<span class="metric">${escapeHtml(n)}</span>`).join(" ")
        : `<span class="none">(none)</span>`;
      return `<tr><th scope="row">${escapeHtml(label)}</th><td>${cell}</td></tr>`;
    })
    .join("\n");
  const recommendation = impact.recommendation
    ? `pay in the <strong>${escapeHtml(impact.recommendation)}</strong> horizon`
    : "no attached business value — nothing pulls this forward";
  return `<h3>Impact of ${escapeHtml(title)}</h3>
<table class="impact-table">
${rows}
</table>
<p class="recommendation">${recommendation}</p>`;
}

export function renderAlignment(report: AlignmentResponse): string {
  const statRows = LEVELS.map((level) => {
    const stats = report.perLevel[level];
    return `<tr><th scope="row">${level}</th><td>${stats.matched}</td><td>${stats.total}</td><td>${escapeHtml(stats.percent)}</td></tr>`;
  }).join("\n");
  const totalRow = `<tr class="total"><th scope="row">total</th><td>${report.total.matched}</td><td>${report.total.total}</td><td>${escapeHtml(report.total.percent)}</td></tr>`;

  const confusionHeader = LEVELS.map((l) => `<th>business ${l}</th>`).join("");
  const confusionRows = LEVELS.map((technical) => {
    const cells = LEVELS.map((business) => {
      const count = report.confusion[technical][business];
      const cls = technical === business ? ' class="diag"' : "";
      return `<td${cls}>${count}</td>`;
    }).join("");
    return `<tr><th scope="row">technical ${technical}</th>${cells}</tr>`;
  }).join("\n");

  const misaligned =
    report.misalignments.length === 0
      ? `<p class="empty-hint">No misaligned items.</p>`
      : `<ul class="misaligned">` +
        report.misalignments
          .map(
            (entry) =>
              `<li><code>${escapeHtml(entry.itemId)}</code> technical=${entry.technical} business=${entry.business}</li>`,
          )
          .join("\n") +
        `</ul>`;

  return `<h3>Alignment by ${report.metric}</h3>
<table class="stats-table">
<thead><tr><th>Level</th><th>Matched</th><th>Total</th><th>%</th></tr></thead>
<tbody>
${statRows}
${totalRow}
</tbody>
</table>
<h4>Confusion</h4>
<table class="confusion-table">
<thead><tr><th></th>${confusionHeader}</tr></thead>
<tbody>
${confusionRows}
</tbody>
</table>
<h4>Misaligned items</h4>
${misaligned}`;
}
