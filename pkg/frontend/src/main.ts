// Application shell: load the ranking, open the default comparison at the
// top-k boundary, and keep the list in sync with recorded decisions.
// Swaps apply optimistically and are reconciled against the server's
// ranking once the decision round-trips.

import { ApiClient, ApiError } from "./api.js";
import {
  DecisionControls,
  INITIAL_CONTROLS,
  updateControls,
} from "./controls.js";
import type { ContrastBundle, Ranking } from "./types.js";
import {
  renderError,
  renderPairView,
  renderRankingView,
} from "./views.js";

const DEFAULT_POLICY = "topz:2";

export class App {
  ranking: Ranking | null = null;
  bundle: ContrastBundle | null = null;
  picked: string[] = [];
  controls: DecisionControls = INITIAL_CONTROLS;
  scenario: number | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly listEl: HTMLElement,
    private readonly pairEl: HTMLElement,
    private readonly policy: string = DEFAULT_POLICY,
  ) {}

  async start(): Promise<void> {
    try {
      this.ranking = await this.api.getRanking();
    } catch (error) {
      renderError(this.listEl, describe(error), () => void this.start());
      return;
    }
    // default comparison: the adjacent pair around the top-k boundary
    const k = this.ranking.k;
    const below = this.ranking.entries[k] ?? this.ranking.entries[k - 1];
    const boundary = this.ranking.entries[k - 1];
    if (boundary && below) {
      this.picked = boundary.item_id === below.item_id
        ? [boundary.item_id]
        : [boundary.item_id, below.item_id];
    }
    this.renderList();
    if (this.picked.length === 2) await this.openComparison();
  }

  renderList(): void {
    if (!this.ranking) return;
    renderRankingView(this.listEl, this.ranking, this.picked, {
      onPick: (itemId) => void this.pick(itemId),
    });
  }

  async pick(itemId: string): Promise<void> {
    if (this.picked.includes(itemId)) {
      this.picked = this.picked.filter((p) => p !== itemId);
    } else {
      this.picked = [...this.picked.slice(-1), itemId];
    }
    this.renderList();
    if (this.picked.length === 2) await this.openComparison();
  }

  async openComparison(): Promise<void> {
    const [a, b] = this.picked;
    if (!a || !b) return;
    this.scenario = null;
    this.controls = INITIAL_CONTROLS;
    try {
      this.bundle = await this.api.getContrast(a, b, this.policy);
    } catch (error) {
      renderError(this.pairEl, describe(error), () => void this.openComparison());
      return;
    }
    this.renderPair();
  }

  renderPair(): void {
    if (!this.bundle) return;
    renderPairView(this.pairEl, this.bundle, this.controls, this.scenario, {
      onControlsChange: (change) => {
        this.controls = updateControls(this.controls, change);
        this.renderPair();
      },
      onSubmit: () => void this.submitDecision(),
    });
  }

  async submitDecision(): Promise<void> {
    if (!this.bundle || !this.ranking) return;
    const { report } = this.bundle;
    const decision = {
      item_a: report.item_a,
      item_b: report.item_b,
      justification: this.controls.justification,
      position: this.controls.position,
      action: this.controls.action,
    };

    const snapshot = this.ranking;
    if (decision.action === "swap") {
      this.ranking = optimisticSwap(this.ranking, report.item_a, report.item_b);
      this.renderList();
    }
    try {
      const outcome = await this.api.postDecision(decision);
      this.scenario = outcome.scenario;
      this.ranking = await this.api.getRanking(); // reconcile with the server
      this.renderList();
      this.renderPair();
    } catch (error) {
      this.ranking = snapshot; // revert the optimistic exchange
      this.renderList();
      renderError(this.pairEl, describe(error), () => this.renderPair());
    }
  }
}

/** Local mirror of the server's swap semantics: exchange positions, keep
 * scores with their items. */
export function optimisticSwap(ranking: Ranking, a: string, b: string): Ranking {
  const entries = ranking.entries.map((e) => ({ ...e }));
  const ia = entries.findIndex((e) => e.item_id === a);
  const ib = entries.findIndex((e) => e.item_id === b);
  if (ia < 0 || ib < 0 || ia === ib) return ranking;
  const ea = entries[ia]!;
  const eb = entries[ib]!;
  [ea.item_id, eb.item_id] = [eb.item_id, ea.item_id];
  [ea.score, eb.score] = [eb.score, ea.score];
  const overridden = entries.some((e, i) => ranking.model_order[i] !== e.item_id);
  return { ...ranking, entries, overridden };
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.code}: ${error.message}`;
  return "Cannot reach the ranking service.";
}

export function boot(): void {
  const listEl = document.getElementById("ranking-panel");
  const pairEl = document.getElementById("pair-panel");
  if (!listEl || !pairEl) return;
  const app = new App(new ApiClient(""), listEl, pairEl);
  void app.start();
}

if (typeof document !== "undefined" && document.getElementById("ranking-panel")) {
  boot();
}
