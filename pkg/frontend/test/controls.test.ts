import { describe, expect, it } from "vitest";

import {
  INITIAL_CONTROLS,
  scenarioLabel,
  scenarioOf,
  swapAllowed,
  updateControls,
} from "../src/controls.js";

describe("decision controls state", () => {
  it("starts satisfied with swap disallowed", () => {
    expect(INITIAL_CONTROLS.position).toBe("satisfied");
    expect(swapAllowed(INITIAL_CONTROLS)).toBe(false);
  });

  it("allows swap only while unsatisfied", () => {
    const unsatisfied = updateControls(INITIAL_CONTROLS, { position: "unsatisfied" });
    expect(swapAllowed(unsatisfied)).toBe(true);
    const back = updateControls(unsatisfied, { position: "satisfied" });
    expect(swapAllowed(back)).toBe(false);
  });

  it("downgrades a pending swap when position flips back to satisfied", () => {
    let state = updateControls(INITIAL_CONTROLS, { position: "unsatisfied" });
    state = updateControls(state, { action: "swap" });
    expect(state.action).toBe("swap");
    state = updateControls(state, { position: "satisfied" });
    expect(state.action).toBe("confirm"); // invalid request can never be built
  });

  it("maps the justification/position grid onto scenarios 1-4", () => {
    expect(scenarioOf("agree", "satisfied")).toBe(1);
    expect(scenarioOf("agree", "unsatisfied")).toBe(2);
    expect(scenarioOf("disagree", "satisfied")).toBe(3);
    expect(scenarioOf("disagree", "unsatisfied")).toBe(4);
  });

  it("labels every scenario", () => {
    for (const s of [1, 2, 3, 4]) {
      expect(scenarioLabel(s)).toMatch(/Scenario/);
    }
  });
});
