// DOM views: ranked list with the top-k divider, pair comparison panel
// (radar + bars + explanation text + decision controls), error banner.

import { renderBars, renderRadar } from "./charts.js";
import {
  DecisionControls,
  scenarioLabel,
  swapAllowed,
} from "./controls.js";
import type { ContrastBundle, Ranking } from "./types.js";

export interface RankingHandlers {
  onPick(itemId: string): void;
}

/** A row is badged as moved when its position differs from the model order. */
export function movedRows(ranking: Ranking): Set<string> {
  const moved = new Set<string>();
  ranking.entries.forEach((entry, i) => {
    if (ranking.model_order[i] !== entry.item_id) moved.add(entry.item_id);
  });
  return moved;
}

export function renderRankingView(
  container: HTMLElement,
  ranking: Ranking,
  picked: string[],
  handlers: RankingHandlers,
): void {
  container.textContent = "";
  const heading = document.createElement("h2");
  heading.textContent = `Candidates (top ${ranking.k} of ${ranking.n})`;
  container.appendChild(heading);

  if (ranking.entries.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No candidates in this session.";
    container.appendChild(empty);
    return;
  }

  if (ranking.overridden) {
    const badge = document.createElement("p");
    badge.className = "overridden-note";
    badge.textContent = "Order adjusted by reviewer; model order is kept for audit.";
    container.appendChild(badge);
  }

  const moved = movedRows(ranking);
  const table = document.createElement("table");
  table.className = "ranking";
  for (const entry of ranking.entries) {
    const row = document.createElement("tr");
    row.dataset.itemId = entry.item_id;
    row.className = "ranking-row";
    if (entry.rank === ranking.k) row.classList.add("topk-boundary");
    if (moved.has(entry.item_id)) row.classList.add("moved");
    if (picked.includes(entry.item_id)) row.classList.add("picked");

    const rank = document.createElement("td");
    rank.className = "rank";
    rank.textContent = String(entry.rank);
    const id = document.createElement("td");
    id.className = "item-id";
    id.textContent = entry.item_id;
    const score = document.createElement("td");
    score.className = "score";
    score.textContent = entry.score.toFixed(5);
    const badge = document.createElement("td");
    badge.className = "badge";
    badge.textContent = moved.has(entry.item_id) ? "moved" : "";

    row.append(rank, id, score, badge);
    row.addEventListener("click", () => handlers.onPick(entry.item_id));
    table.appendChild(row);
  }
  container.appendChild(table);
}

export interface PairHandlers {
  onControlsChange(change: Partial<DecisionControls>): void;
  onSubmit(): void;
}

export function renderPairView(
  container: HTMLElement,
  bundle: ContrastBundle,
  controls: DecisionControls,
  scenario: number | null,
  handlers: PairHandlers,
): void {
  container.textContent = "";
  const { report, text, chart_data } = bundle;
  const nameA = `Candidate ${report.item_a}`;
  const nameB = `Candidate ${report.item_b}`;

  const heading = document.createElement("h2");
  heading.textContent = `${nameA} vs ${nameB}`;
  container.appendChild(heading);

  if (report.indistinguishable) {
    const note = document.createElement("p");
    note.className = "indistinguishable";
    note.textContent = "These candidates are indistinguishable to the model.";
    container.appendChild(note);
  }

  const charts = document.createElement("div");
  charts.className = "charts";
  const radarBox = document.createElement("div");
  radarBox.className = "radar-box";
  radarBox.innerHTML = renderRadar(chart_data.radar, nameA, nameB);
  const barsBox = document.createElement("div");
  barsBox.className = "bars-box";
  barsBox.innerHTML = renderBars(chart_data.bars, nameA, nameB);
  charts.append(radarBox, barsBox);
  container.appendChild(charts);

  // the text panel is the only narrative surface; numbers stay in the charts
  const textPanel = document.createElement("div");
  textPanel.className = "explanation";
  for (const paragraph of text.paragraphs) {
    const p = document.createElement("p");
    p.textContent = paragraph;
    textPanel.appendChild(p);
  }
  container.appendChild(textPanel);

  container.appendChild(renderDecisionControls(controls, scenario, handlers));
}

function toggleGroup(
  name: string,
  options: [string, string],
  current: string,
  onPick: (value: string) => void,
): HTMLElement {
  const group = document.createElement("div");
  group.className = "toggle-group";
  group.dataset.name = name;
  for (const value of options) {
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.value = value;
    button.textContent = value;
    button.className = value === current ? "toggle active" : "toggle";
    button.addEventListener("click", () => onPick(value));
    group.appendChild(button);
  }
  return group;
}

function renderDecisionControls(
  controls: DecisionControls,
  scenario: number | null,
  handlers: PairHandlers,
): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "decision-panel";

  const justLabel = document.createElement("span");
  justLabel.textContent = "The explanation above is:";
  panel.appendChild(justLabel);
  panel.appendChild(
    toggleGroup("justification", ["agree", "disagree"], controls.justification, (v) =>
      handlers.onControlsChange({ justification: v as DecisionControls["justification"] }),
    ),
  );

  const posLabel = document.createElement("span");
  posLabel.textContent = "The relative positions are:";
  panel.appendChild(posLabel);
  panel.appendChild(
    toggleGroup("position", ["satisfied", "unsatisfied"], controls.position, (v) =>
      handlers.onControlsChange({ position: v as DecisionControls["position"] }),
    ),
  );

  const actionRow = document.createElement("div");
  actionRow.className = "action-row";
  const confirmBtn = document.createElement("button");
  confirmBtn.type = "button";
  confirmBtn.id = "action-confirm";
  confirmBtn.textContent = "Keep order";
  confirmBtn.className = controls.action === "confirm" ? "action active" : "action";
  confirmBtn.addEventListener("click", () => handlers.onControlsChange({ action: "confirm" }));

  const swapBtn = document.createElement("button");
  swapBtn.type = "button";
  swapBtn.id = "action-swap";
  swapBtn.textContent = "Swap the pair";
  swapBtn.className = controls.action === "swap" ? "action active" : "action";
  swapBtn.disabled = !swapAllowed(controls);
  swapBtn.addEventListener("click", () => handlers.onControlsChange({ action: "swap" }));

  const submit = document.createElement("button");
  submit.type = "button";
  submit.id = "submit-decision";
  submit.textContent = "Record decision";
  submit.className = "submit";
  submit.addEventListener("click", () => handlers.onSubmit());

  actionRow.append(confirmBtn, swapBtn, submit);
  panel.appendChild(actionRow);

  if (scenario !== null) {
    const banner = document.createElement("p");
    banner.className = "scenario-banner";
    banner.dataset.scenario = String(scenario);
    banner.textContent = scenarioLabel(scenario);
    panel.appendChild(banner);
  }
  return panel;
}

export function renderError(
  container: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  container.textContent = "";
  const banner = document.createElement("div");
  banner.className = "error-banner";
  const text = document.createElement("span");
  text.textContent = message;
  const retry = document.createElement("button");
  retry.type = "button";
  retry.textContent = "Retry";
  retry.addEventListener("click", onRetry);
  banner.append(text, retry);
  container.appendChild(banner);
}
