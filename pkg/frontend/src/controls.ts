import type { Action, Justification, Position } from "./types.js";

export interface DecisionControls {
  justification: Justification;
  position: Position;
  action: Action;
}

export const INITIAL_CONTROLS: DecisionControls = {
  justification: "agree",
  position: "satisfied",
  action: "confirm",
};

/** Swapping is only ever allowed while the position is unsatisfied; the
 * server enforces the same invariant, this mirror keeps the control
 * disabled so an invalid request is never sent. */
export function swapAllowed(controls: DecisionControls): boolean {
  return controls.position === "unsatisfied";
}

/** Apply a toggle and keep the state legal (flipping back to satisfied
 * while a swap is pending downgrades the action to confirm). */
export function updateControls(
  controls: DecisionControls,
  change: Partial<DecisionControls>,
): DecisionControls {
  const next = { ...controls, ...change };
  if (!swapAllowed(next) && next.action === "swap") {
    next.action = "confirm";
  }
  return next;
}

export function scenarioOf(justification: Justification, position: Position): number {
  const base = justification === "agree" ? 1 : 3;
  return base + (position === "unsatisfied" ? 1 : 0);
}

const SCENARIO_LABELS: Record<number, string> = {
  1: "Scenario 1: justification accepted, positions kept.",
  2: "Scenario 2: justification accepted, positions changed by you.",
  3: "Scenario 3: justification contested, positions kept.",
  4: "Scenario 4: justification contested, positions changed by you.",
};

export function scenarioLabel(scenario: number): string {
  return SCENARIO_LABELS[scenario] ?? `Scenario ${scenario}`;
}
