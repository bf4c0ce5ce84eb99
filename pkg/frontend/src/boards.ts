/**
 * Board rendering: the four-quadrant prioritization board and the
 * business-value board, built from the registry document the service sent.
 *
 * Pure string -> string functions so they can be tested without a DOM;
 * main.ts owns the actual elements and event wiring. Quadrant membership
 * comes straight from the declared process type / asset state, and every
 * edge is a declared supports-link — nothing here ranks or scores.
 */

import type { AssetDoc, ProcessDoc, RegistryDoc } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export type Quadrant =
  | "process-core-support"
  | "process-other"
  | "asset-operational"
  | "asset-to-be-operational";

const QUADRANT_TITLES: Record<Quadrant, string> = {
  "process-core-support": "Core/support processes",
  "process-other": "Other processes",
  "asset-operational": "Operational assets",
  "asset-to-be-operational": "To-be operational assets",
};

function byNameThenId<T extends { name: string; id: string }>(a: T, b: T): number {
  return a.name.localeCompare(b.name) || a.id.localeCompare(b.id);
}

function processCard(process: ProcessDoc, supporters: string[]): string {
  const tooltip =
    supporters.length > 0
      ? `${process.id} — supported by: ${supporters.join(", ")}`
      : `${process.id} — no supporting assets`;
  return `<div class="card" draggable="true" data-kind="process" data-id="${escapeHtml(process.id)}" title="${escapeHtml(tooltip)}">
    <span class="card-name">${escapeHtml(process.name)}</span>
    <span class="card-levels">crit ${process.criticality} / urg ${process.urgency}</span>
  </div>`;
}

function assetCard(asset: AssetDoc, supportNames: string[]): string {
  const tooltip =
    supportNames.length > 0
      ? `${asset.id} — supports: ${supportNames.join(", ")}`
      : `${asset.id} — supports no process`;
  return `<div class="card" draggable="true" data-kind="asset" data-id="${escapeHtml(asset.id)}" title="${escapeHtml(tooltip)}">
    <span class="card-name">${escapeHtml(asset.name)}</span>
  </div>`;
}

function quadrantSection(quadrant: Quadrant, cards: string[], emptyHint: string): string {
  const body =
    cards.length > 0
      ? cards.join("\n")
      : `<p class="empty-hint">${emptyHint}</p>`;
  return `<section class="quadrant" data-quadrant="${quadrant}">
  <h3>${QUADRANT_TITLES[quadrant]}</h3>
  ${body}
</section>`;
}

/**
 * The prioritization board: processes on the left split by type, assets on
 * the right split by state, plus one edge row per supports-link. Cards are
 * drag sources and quadrants are drop targets for reclassification.
 */
export function renderPrioritizationBoard(doc: RegistryDoc): string {
  const processNames = new Map(doc.processes.map((p) => [p.id, p.name]));
  const supportersOf = new Map<string, string[]>();
  for (const asset of doc.assets) {
    for (const processId of asset.supports) {
      const list = supportersOf.get(processId) ?? [];
      list.push(asset.name);
      supportersOf.set(processId, list);
    }
  }

  const processes = [...doc.processes].sort(byNameThenId);
  const assets = [...doc.assets].sort(byNameThenId);

  const addProcessHint =
    `No processes here yet. <button type="button" data-action="add-process">Add a business process</button>`;
  const addAssetHint =
    `No assets here yet. <button type="button" data-action="add-asset">Add an IT asset</button>`;

  const quadrants = [
    quadrantSection(
      "process-core-support",
      processes.filter((p) => p.type === "core-support").map((p) =>
        processCard(p, (supportersOf.get(p.id) ?? []).sort()),
      ),
      addProcessHint,
    ),
    quadrantSection(
      "process-other",
      processes.filter((p) => p.type === "other").map((p) =>
        processCard(p, (supportersOf.get(p.id) ?? []).sort()),
      ),
      addProcessHint,
    ),
    quadrantSection(
      "asset-operational",
      assets.filter((a) => a.state === "operational").map((a) =>
        assetCard(a, a.supports.map((id) => processNames.get(id) ?? id).sort()),
      ),
      addAssetHint,
    ),
    quadrantSection(
      "asset-to-be-operational",
      assets.filter((a) => a.state === "to-be-operational").map((a) =>
        assetCard(a, a.supports.map((id) => processNames.get(id) ?? id).sort()),
      ),
      addAssetHint,
    ),
  ];

  const edges: string[] = [];
  for (const asset of assets) {
    for (const processId of [...asset.supports].sort()) {
      const processName = processNames.get(processId) ?? processId;
      edges.push(
        `<li class="edge" title="${escapeHtml(`${asset.id} supports ${processId}`)}">${escapeHtml(asset.name)} &rarr; ${escapeHtml(processName)}</li>`,
      );
    }
  }
  const edgeBlock =
    edges.length > 0
      ? `<ul class="edges">\n${edges.join("\n")}\n</ul>`
      : `<p class="empty-hint">No supports-links yet.</p>`;

  return `<div class="board-grid">
<div class="board-col">
${quadrants[0]}
${quadrants[1]}
</div>
<div class="board-col">
${quadrants[2]}
${quadrants[3]}
</div>
</div>
<h3>Supports</h3>
${edgeBlock}`;
}

export type ReclassifyPlan =
  | { kind: "process"; doc: ProcessDoc }
  | { kind: "asset"; doc: AssetDoc }
  | null;

/**
 * What dropping a card on a quadrant means: a process moved between the two
 * type quadrants gets its type changed, an asset moved between the two state
 * quadrants gets its state changed. Cross-family drops and no-op drops plan
 * nothing. The returned doc is a copy — the fetched view stays untouched
 * until the service accepts the mutation.
 */
export function planReclassify(
  doc: RegistryDoc,
  kind: string,
  id: string,
  quadrant: Quadrant,
): ReclassifyPlan {
  if (kind === "process") {
    const target =
      quadrant === "process-core-support"
        ? "core-support"
        : quadrant === "process-other"
          ? "other"
          : null;
    const process = doc.processes.find((p) => p.id === id);
    if (target === null || process === undefined || process.type === target) {
      return null;
    }
    return { kind: "process", doc: { ...process, type: target } };
  }
  if (kind === "asset") {
    const target =
      quadrant === "asset-operational"
        ? "operational"
        : quadrant === "asset-to-be-operational"
          ? "to-be-operational"
          : null;
    const asset = doc.assets.find((a) => a.id === id);
    if (target === null || asset === undefined || asset.state === target) {
      return null;
    }
    return { kind: "asset", doc: { ...asset, state: target } };
  }
  return null;
}

/** Subjects (processes then assets) against the horizon scheme. */
export function renderBusinessValueBoard(doc: RegistryDoc): string {
  const scheme = doc.valueMap.horizons;
  const subjects: { id: string; name: string; kind: string }[] = [
    ...[...doc.processes].sort(byNameThenId).map((p) => ({
      id: p.id,
      name: p.name,
      kind: "process",
    })),
    ...[...doc.assets].sort(byNameThenId).map((a) => ({
      id: a.id,
      name: a.name,
      kind: "asset",
    })),
  ];

  if (subjects.length === 0) {
    return `<p class="empty-hint">Nothing to attach metrics to yet — add a business process or an IT asset on the board first.</p>`;
  }

  const header = scheme.map((label) => `<th>${escapeHtml(label)}</th>`).join("");
  const rows = subjects
    .map((subject) => {
      const cells = scheme
        .map((label) => {
          const attached = doc.valueMap.attachments
            .filter((a) => a.subject === subject.id && a.metric.horizon === label)
            .map(
              (a) =>
                `<span class="metric" title="${escapeHtml(a.metric.id)}">${escapeHtml(a.metric.name)}<button type="button" class="detach" data-action="detach" data-subject="${escapeHtml(subject.id)}" data-metric="${escapeHtml(a.metric.id)}" title="detach">&times;</button></span>`,
            )
            .sort();
          return `<td>${attached.join(" ")}</td>`;
        })
        .join("");
      return `<tr data-subject="${escapeHtml(subject.id)}"><th scope="row">${escapeHtml(subject.name)} <span class="subject-kind">${subject.kind}</span></th>${cells}</tr>`;
    })
    .join("\n");

  return `<table class="value-table">
<thead><tr><th>Subject</th>${header}</tr></thead>
<tbody>
${rows}
</tbody>
</table>`;
}
