/** Browser wiring: preset loader, graph/matrix editors, stage timeline,
 * interval cards, choice commits, report view. All math lives server-side;
 * this file only moves payloads between the DOM and the API client. */

import { ApiError, Client } from "./api.js";
import { presets } from "./presets.js";
import {
  branchOptions,
  choiceOptions,
  entryText,
  graphView,
  intervalCards,
  parseEntryText,
  stageTimeline,
  altText,
} from "./render.js";
import { ScenarioSession } from "./state.js";
import type {
  AlternativeDoc,
  InfluenceEntryDoc,
  ScenarioDoc,
  StageDoc,
} from "./types.js";

const client = new Client("");
const session = new ScenarioSession(client);

let working: ScenarioDoc = structuredClone(presets[0]!.doc);
let branchIndex = 0;
const pendingChoices = new Map<string, AlternativeDoc>();

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node;
}

function showError(error: unknown): void {
  const box = byId("error");
  if (error instanceof ApiError) {
    box.textContent = `${error.body.code}: ${error.body.message}`;
  } else if (error instanceof Error) {
    box.textContent = error.message;
  } else {
    box.textContent = String(error);
  }
  box.hidden = false;
}

function clearError(): void {
  const box = byId("error");
  box.hidden = true;
  box.textContent = "";
}

// -- editors (redrawn only when the working document changes shape) ---------

function drawGraphEditor(): void {
  const host = byId("graph");
  host.replaceChildren();
  const view = graphView(working.subjects, working.relations);
  const chips = el("div", "chips");
  for (const node of view.nodes) chips.append(el("span", "chip", node));
  host.append(chips);
  working.relations.forEach((relation, index) => {
    const row = el("div", "relation-row");
    row.append(el("span", "pair", `${relation.pair[0]} ↔ ${relation.pair[1]}`));
    const toggle = el("button", `relation ${relation.relation}`, relation.relation);
    toggle.addEventListener("click", () => {
      const current = working.relations[index];
      if (current === undefined) return;
      current.relation =
        current.relation === "alliance" ? "conflict" : "alliance";
      drawGraphEditor();
    });
    row.append(toggle);
    host.append(row);
  });
}

function firstInfluenceStage(): Extract<StageDoc, { type: "influence" }> | null {
  for (const stage of working.stages) {
    if (stage.type === "influence") return stage;
  }
  return null;
}

function drawMatrixEditor(): void {
  const host = byId("matrix");
  host.replaceChildren();
  const stage = firstInfluenceStage();
  if (stage === null) {
    host.append(el("p", "hint", "no influence stage in this scenario"));
    return;
  }
  const table = el("table", "matrix");
  const head = el("tr");
  head.append(el("th", "", "exerts on →"));
  for (const target of working.subjects) head.append(el("th", "", target));
  table.append(head);
  for (const source of working.subjects) {
    const row = el("tr");
    row.append(el("th", "", source));
    for (const target of working.subjects) {
      const cell = el("td");
      if (source !== target) {
        const input = el("input") as HTMLInputElement;
        const entry = stage.matrix[source]?.[target];
        input.value = entry === undefined ? "" : entryText(entry, working.universe);
        input.addEventListener("change", () => {
          try {
            const parsed: InfluenceEntryDoc = parseEntryText(
              input.value,
              working.universe,
            );
            (stage.matrix[source] ??= {})[target] = parsed;
            input.classList.remove("invalid");
            clearError();
          } catch (error) {
            input.classList.add("invalid");
            showError(error);
          }
        });
        cell.append(input);
      }
      row.append(cell);
    }
    table.append(row);
  }
  host.append(table);
}

// -- live sections (redrawn on every server state change) -------------------

function drawTimeline(): void {
  const host = byId("timeline");
  host.replaceChildren();
  for (const entry of stageTimeline(working.stages, session.currentState)) {
    host.append(el("li", `stage ${entry.status}`, `${entry.index + 1}. ${entry.label}`));
  }
}

function drawChoices(): void {
  const host = byId("choices");
  host.replaceChildren();
  pendingChoices.clear();
  const state = session.currentState;
  if (state === null || session.done) return;
  const povs = Object.entries(state.points_of_view);
  if (povs.length === 0) return;
  for (const [subject, entry] of povs) {
    const options = choiceOptions(entry, working.universe);
    if (options.length < 2) continue;
    const row = el("div", "choice-row");
    row.append(el("label", "", `${subject} commits to`));
    const select = el("select") as HTMLSelectElement;
    select.append(new Option("(leave open)", ""));
    options.forEach((members, index) => {
      select.append(new Option(altText(members, working.universe), String(index)));
    });
    select.addEventListener("change", () => {
      if (select.value === "") {
        pendingChoices.delete(subject);
      } else {
        const chosen = options[Number(select.value)];
        if (chosen !== undefined) pendingChoices.set(subject, chosen);
      }
    });
    row.append(select);
    host.append(row);
  }
}

function drawCards(): void {
  const host = byId("cards");
  host.replaceChildren();
  const result = session.displayedSession();
  const selector = byId("branches") as unknown as HTMLSelectElement;
  selector.replaceChildren();
  if (result === null) return;
  for (const option of branchOptions(result)) {
    selector.append(new Option(option.label, String(option.index)));
  }
  if (branchIndex >= result.branches.length) branchIndex = 0;
  selector.value = String(branchIndex);
  host.append(el("p", "polynomial", `polynomial: ${result.polynomial}`));
  for (const card of intervalCards(result, branchIndex)) {
    const box = el("div", `card ${card.interval.kind}`);
    box.append(el("h3", "", card.subject));
    box.append(el("p", "headline", card.headline));
    if (card.forced !== null) {
      box.append(el("p", "forced", `forced: ${altText(card.forced, working.universe)}`));
    }
    host.append(box);
  }
}

function redraw(): void {
  drawTimeline();
  drawChoices();
  drawCards();
}

// -- actions ----------------------------------------------------------------

async function loadScenario(): Promise<void> {
  clearError();
  try {
    await session.load(working);
    branchIndex = 0;
    redraw();
    byId("report").textContent = "";
  } catch (error) {
    showError(error);
  }
}

async function runStage(): Promise<void> {
  clearError();
  try {
    const choices = Object.fromEntries(pendingChoices);
    await session.runStage(choices);
    branchIndex = 0;
    redraw();
  } catch (error) {
    showError(error);
  }
}

async function viewReport(): Promise<void> {
  clearError();
  try {
    const report = await session.report();
    byId("report").textContent = report.text;
  } catch (error) {
    showError(error);
  }
}

function init(): void {
  const picker = byId("preset") as unknown as HTMLSelectElement;
  presets.forEach((preset, index) => {
    picker.append(new Option(preset.name, String(index)));
  });
  picker.addEventListener("change", () => {
    const preset = presets[Number(picker.value)];
    if (preset === undefined) return;
    working = structuredClone(preset.doc);
    drawGraphEditor();
    drawMatrixEditor();
    redraw();
  });
  byId("load").addEventListener("click", () => void loadScenario());
  byId("step").addEventListener("click", () => void runStage());
  byId("show-report").addEventListener("click", () => void viewReport());
  (byId("branches") as unknown as HTMLSelectElement).addEventListener(
    "change",
    (event) => {
      branchIndex = Number((event.target as HTMLSelectElement).value);
      drawCards();
    },
  );
  drawGraphEditor();
  drawMatrixEditor();
  redraw();
}

init();
