// DOM bootstrap: owns the UI state, wires events, and keeps the rendered
// panels in sync with the service. Draft edits (rule-table cells, pending
// reclassifications) live here and never touch the fetched registry view;
// the server decides, we re-render from its answer.

import {
  ApiError,
  fetchAlignment,
  fetchBacklog,
  fetchCanvasSvg,
  fetchImpact,
  fetchRegistry,
  postWhatIf,
  putAsset,
  putProcess,
  putRuleTable,
  putValueMap,
} from "./api.js";
import {
  planReclassify,
  renderBusinessValueBoard,
  renderPrioritizationBoard,
  type Quadrant,
} from "./boards.js";
import { renderAlignment, renderBacklog, renderImpact } from "./panels.js";
import { startPolling } from "./poll.js";
import {
  canSubmit,
  draftFromTable,
  tableFromDraft,
  type CellKey,
  type DraftTable,
} from "./rules.js";
import type { Metric, RegistryDoc } from "./types.js";
import { renderWhatIfDiff, renderWhatIfEditor } from "./whatif.js";

const POLL_INTERVAL_MS = 4000;

interface UiState {
  snapshot: number;
  document: RegistryDoc | null;
  draft: DraftTable | null;
  metric: Metric;
  lastWhatIf: string; // rendered diff cache, reset on refresh
}

const state: UiState = {
  snapshot: 0,
  document: null,
  draft: null,
  metric: "criticality",
  lastWhatIf: "",
};

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el;
}

function banner(kind: "info" | "warn" | "error", html: string): void {
  $("banner").innerHTML = `<div class="banner banner-${kind}">${html}</div>`;
}

function clearBanner(): void {
  $("banner").innerHTML = "";
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const parts: string[] = [error.message];
    for (const finding of error.detail.findings ?? []) {
      parts.push(`${finding.severity} ${finding.entityId}: ${finding.message}`);
    }
    for (const problem of error.detail.problems ?? []) {
      parts.push(problem);
    }
    return parts.join("<br>");
  }
  return error instanceof Error ? error.message : String(error);
}

// --- rendering ---------------------------------------------------------------

function renderAll(): void {
  const doc = state.document;
  if (doc === null) {
    return;
  }
  $("snapshot-badge").textContent = `snapshot ${state.snapshot}`;
  $("board").innerHTML = renderPrioritizationBoard(doc);
  $("value-board").innerHTML = renderBusinessValueBoard(doc);
  renderAttachForm(doc);
  if (state.draft === null) {
    state.draft = draftFromTable(doc.ruleTable);
  }
  renderWhatIf();
}

function renderWhatIf(): void {
  const doc = state.document;
  if (doc === null || state.draft === null) {
    return;
  }
  $("whatif-editor").innerHTML = renderWhatIfEditor(
    state.draft,
    draftFromTable(doc.ruleTable),
  );
  $("whatif-diff").innerHTML = state.lastWhatIf;
}

function renderAttachForm(doc: RegistryDoc): void {
  const subjects = [
    ...doc.processes.map((p) => ({ id: p.id, name: p.name })),
    ...doc.assets.map((a) => ({ id: a.id, name: a.name })),
  ];
  const subjectOptions = subjects
    .map((s) => `<option value="${s.id}">${s.name}</option>`)
    .join("");
  const horizonOptions = doc.valueMap.horizons
    .map((label) => `<option value="${label}">${label}</option>`)
    .join("");
  (document.getElementById("attach-subject") as HTMLSelectElement).innerHTML =
    subjectOptions;
  (document.getElementById("attach-horizon") as HTMLSelectElement).innerHTML =
    horizonOptions;
}

// --- data flow ---------------------------------------------------------------

async function refresh(): Promise<void> {
  try {
    const registry = await fetchRegistry();
    state.snapshot = registry.snapshot;
    state.document = registry.document;
    renderAll();

    const backlog = await fetchBacklog();
    $("backlog").innerHTML = renderBacklog(backlog.items);

    try {
      const alignment = await fetchAlignment(state.metric);
      $("alignment").innerHTML = renderAlignment(alignment);
    } catch (error) {
      // items without a technical priority make the report undefined
      $("alignment").innerHTML =
        `<p class="empty-hint">${describeError(error)}</p>`;
    }

    const boardSvg = await fetchCanvasSvg("prioritization");
    $("board-svg").innerHTML = boardSvg.svg;
    const valueSvg = await fetchCanvasSvg("business-value");
    $("value-svg").innerHTML = valueSvg.svg;
  } catch (error) {
    banner(
      "error",
      `Service unreachable: ${describeError(error)} <button type="button" id="retry-btn">Retry</button>`,
    );
    const retry = document.getElementById("retry-btn");
    retry?.addEventListener("click", () => {
      clearBanner();
      void refresh();
    });
    throw error;
  }
}

/** One poll tick: cheap snapshot probe; full refresh only when it moved. */
async function pollTick(): Promise<void> {
  const registry = await fetchRegistry();
  if (registry.snapshot !== state.snapshot) {
    banner(
      "warn",
      `The registry changed on the server (snapshot ${state.snapshot} &rarr; ${registry.snapshot}); views refreshed.`,
    );
    state.lastWhatIf = "";
    await refresh();
  }
}

async function applyMutation(
  send: (ifMatch: number) => Promise<{ snapshot: number; warnings: { severity: string; entityId: string; message: string }[] }>,
  retried = false,
): Promise<void> {
  try {
    const result = await send(state.snapshot);
    clearBanner();
    if (result.warnings.length > 0) {
      banner(
        "warn",
        result.warnings
          .map((w) => `${w.severity} ${w.entityId}: ${w.message}`)
          .join("<br>"),
      );
    }
    await refresh();
  } catch (error) {
    if (error instanceof ApiError && error.status === 409 && !retried) {
      // Stale snapshot: reload the current state, then reapply once.
      await refresh();
      banner("warn", "The registry moved underneath this edit; reapplied on the fresh snapshot.");
      await applyMutation(send, true);
      return;
    }
    banner("error", describeError(error));
    await refresh();
  }
}

// --- event wiring ------------------------------------------------------------

function wireTabs(): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>("nav [data-tab]")) {
    button.addEventListener("click", () => {
      for (const section of document.querySelectorAll<HTMLElement>(".tab")) {
        section.classList.add("hidden");
      }
      $(`tab-${button.dataset.tab}`).classList.remove("hidden");
      for (const other of document.querySelectorAll("nav [data-tab]")) {
        other.classList.toggle("active", other === button);
      }
    });
  }
}

function wireBoard(): void {
  const board = $("board");

  board.addEventListener("dragstart", (event) => {
    const card = (event.target as HTMLElement).closest<HTMLElement>(".card");
    if (card === null || event.dataTransfer === null) {
      return;
    }
    event.dataTransfer.setData(
      "text/plain",
      JSON.stringify({ kind: card.dataset.kind, id: card.dataset.id }),
    );
    event.dataTransfer.effectAllowed = "move";
  });

  board.addEventListener("dragover", (event) => {
    if ((event.target as HTMLElement).closest("[data-quadrant]") !== null) {
      event.preventDefault();
    }
  });

  board.addEventListener("drop", (event) => {
    const section = (event.target as HTMLElement).closest<HTMLElement>("[data-quadrant]");
    if (section === null || event.dataTransfer === null || state.document === null) {
      return;
    }
    event.preventDefault();
    let payload: { kind?: string; id?: string };
    try {
      payload = JSON.parse(event.dataTransfer.getData("text/plain")) as {
        kind?: string;
        id?: string;
      };
    } catch {
      return;
    }
    const plan = planReclassify(
      state.document,
      payload.kind ?? "",
      payload.id ?? "",
      section.dataset.quadrant as Quadrant,
    );
    if (plan === null) {
      return;
    }
    void applyMutation((ifMatch) =>
      plan.kind === "process"
        ? putProcess(plan.doc, ifMatch)
        : putAsset(plan.doc, ifMatch),
    );
  });

  board.addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (button === null) {
      return;
    }
    if (button.dataset.action === "add-process") {
      const section = button.closest<HTMLElement>("[data-quadrant]");
      const type =
        section?.dataset.quadrant === "process-core-support"
          ? "core-support"
          : "other";
      const name = window.prompt("Business process name?");
      if (!name) {
        return;
      }
      const id = `bp-${slug(name)}`;
      void applyMutation((ifMatch) =>
        putProcess(
          { id, name, type, criticality: "medium", urgency: "medium", elements: [] },
          ifMatch,
        ),
      );
    }
    if (button.dataset.action === "add-asset") {
      const section = button.closest<HTMLElement>("[data-quadrant]");
      const stateTarget =
        section?.dataset.quadrant === "asset-to-be-operational"
          ? "to-be-operational"
          : "operational";
      const name = window.prompt("IT asset name?");
      if (!name) {
        return;
      }
      const id = `ci-${slug(name)}`;
      void applyMutation((ifMatch) =>
        putAsset({ id, name, state: stateTarget, supports: [] }, ifMatch),
      );
    }
  });
}

function slug(name: string): string {
  return (
    name
      .toLowerCase()
      .replace(/[^a-z0-9]+/g, "-")
      .replace(/^-|-$/g, "") || "unnamed"
  );
}

function wireValueBoard(): void {
  $("value-board").addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest<HTMLElement>(
      '[data-action="detach"]',
    );
    if (button === null || state.document === null) {
      return;
    }
    const { subject, metric } = button.dataset;
    const valueMap = state.document.valueMap;
    const remaining = valueMap.attachments.filter(
      (a) => !(a.subject === subject && a.metric.id === metric),
    );
    void applyMutation((ifMatch) =>
      putValueMap({ horizons: valueMap.horizons, attachments: remaining }, ifMatch),
    );
  });

  $("attach-form").addEventListener("submit", (event) => {
    event.preventDefault();
    if (state.document === null) {
      return;
    }
    const subject = (document.getElementById("attach-subject") as HTMLSelectElement).value;
    const name = (document.getElementById("attach-name") as HTMLInputElement).value.trim();
    const horizon = (document.getElementById("attach-horizon") as HTMLSelectElement).value;
    if (subject === "" || name === "") {
      return;
    }
    const valueMap = state.document.valueMap;
    const attachment = {
      metric: { id: `m-${slug(name)}`, name, horizon },
      subject,
    };
    void applyMutation((ifMatch) =>
      putValueMap(
        { horizons: valueMap.horizons, attachments: [...valueMap.attachments, attachment] },
        ifMatch,
      ),
    );
  });
}

function wireBacklog(): void {
  $("backlog").addEventListener("click", (event) => {
    const link = (event.target as HTMLElement).closest<HTMLElement>(
      '[data-action="impact"]',
    );
    if (link === null) {
      return;
    }
    event.preventDefault();
    const itemId = link.dataset.item ?? "";
    const title = link.textContent ?? itemId;
    fetchImpact(itemId).then(
      (impact) => {
        $("impact").innerHTML = renderImpact(impact, title);
      },
      (error: unknown) => banner("error", describeError(error)),
    );
  });
}

function wireAlignment(): void {
  const select = document.getElementById("metric-select") as HTMLSelectElement;
  select.addEventListener("change", () => {
    state.metric = select.value as Metric;
    void refresh();
  });
}

function wireWhatIf(): void {
  $("whatif-editor").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const key = input.dataset.cell as CellKey | undefined;
    if (key === undefined || state.draft === null) {
      return;
    }
    state.draft[key] = input.value;
    renderWhatIf();
  });

  $("whatif-editor").addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest<HTMLButtonElement>(
      "[data-action]",
    );
    if (button === null || state.draft === null || button.disabled) {
      return;
    }
    if (!canSubmit(state.draft)) {
      return; // belt and braces: the buttons render disabled anyway
    }
    const table = tableFromDraft(state.draft);
    if (button.dataset.action === "preview") {
      postWhatIf(table).then(
        (response) => {
          state.lastWhatIf = renderWhatIfDiff(response);
          $("whatif-diff").innerHTML = state.lastWhatIf;
        },
        (error: unknown) => banner("error", describeError(error)),
      );
    }
    if (button.dataset.action === "apply") {
      void applyMutation((ifMatch) => putRuleTable(table, ifMatch)).then(() => {
        state.draft = null; // re-seed from the accepted table
        state.lastWhatIf = "";
        renderWhatIf();
      });
    }
  });
}

// --- boot --------------------------------------------------------------------

export function boot(): void {
  wireTabs();
  wireBoard();
  wireValueBoard();
  wireBacklog();
  wireAlignment();
  wireWhatIf();
  void refresh();
  startPolling(pollTick, POLL_INTERVAL_MS);
}

if (typeof document !== "undefined" && document.getElementById("board") !== null) {
  boot();
}
