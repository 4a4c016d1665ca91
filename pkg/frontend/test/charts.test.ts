import { describe, expect, it } from "vitest";

import { barGeometry, radarPoints, renderBars, renderRadar } from "../src/charts.js";
import type { BarRow, RadarRow } from "../src/types.js";

const RADAR: RadarRow[] = [
  { feature: "HSC_P", display_a: 90.9, display_b: 65.5, advantage_marker: "A" },
  { feature: "WORKEX_YES", display_a: 50, display_b: 100, advantage_marker: "B" },
  { feature: "HSC_S_SCI", display_a: 100, display_b: 100, advantage_marker: null },
];

const BARS: BarRow[] = [
  { feature: "HSC_P", signed_share: 55.0, direction: "right", selected: true },
  { feature: "WORKEX_YES", signed_share: -30.0, direction: "left", selected: true },
  { feature: "HSC_S_SCI", signed_share: 0.0, direction: null, selected: false },
];

describe("radar geometry", () => {
  it("maps dummy 100/50 onto the 1.0/0.5 rings", () => {
    const points = radarPoints(RADAR);
    expect(points[1]!.valueA).toBeCloseTo(0.5);
    expect(points[1]!.valueB).toBeCloseTo(1.0);
    expect(points[2]!.valueA).toBeCloseTo(1.0);
    expect(points[2]!.valueB).toBeCloseTo(1.0);
  });

  it("orders numeric axes by raw value inside (0,1)", () => {
    const p = radarPoints(RADAR)[0]!;
    expect(p.valueA).toBeGreaterThan(p.valueB);
    expect(p.valueA).toBeGreaterThan(0);
    expect(p.valueA).toBeLessThan(1);
  });

  it("spreads axes evenly around the circle", () => {
    const points = radarPoints(RADAR);
    expect(points[0]!.angle).toBe(0);
    expect(points[1]!.angle).toBeCloseTo((2 * Math.PI) / 3);
  });
});

describe("bar geometry", () => {
  it("puts supporting bars right of the axis and opposing left", () => {
    const geo = barGeometry(BARS, 300);
    const byFeature = Object.fromEntries(geo.map((g) => [g.feature, g]));
    expect(byFeature["HSC_P"]!.side).toBe("right");
    expect(byFeature["HSC_P"]!.x).toBe(150);
    expect(byFeature["HSC_P"]!.width).toBeGreaterThan(0);
    expect(byFeature["WORKEX_YES"]!.side).toBe("left");
    // left bars end exactly at the axis
    expect(byFeature["WORKEX_YES"]!.x + byFeature["WORKEX_YES"]!.width).toBeCloseTo(150);
  });

  it("renders equal features as null bars of zero width", () => {
    const geo = barGeometry(BARS, 300);
    const nullBar = geo.find((g) => g.feature === "HSC_S_SCI")!;
    expect(nullBar.side).toBeNull();
    expect(nullBar.width).toBe(0);
  });

  it("scales the longest bar to the half width", () => {
    const geo = barGeometry(BARS, 300);
    const longest = geo.find((g) => g.feature === "HSC_P")!;
    expect(longest.width).toBeCloseTo(150 - 4);
  });
});

describe("svg rendering", () => {
  it("radar carries polygons for both sides and advantage markers", () => {
    const svg = renderRadar(RADAR, "Candidate X", "Candidate Y");
    expect(svg).toContain('data-side="A"');
    expect(svg).toContain('data-side="B"');
    expect(svg).toContain('data-marker="A" data-feature="HSC_P"');
    expect(svg).toContain('data-marker="B" data-feature="WORKEX_YES"');
    expect(svg).not.toContain('data-feature="HSC_S_SCI" data-marker');
  });

  it("bars carry side attributes and selection classes", () => {
    const svg = renderBars(BARS, "Candidate X", "Candidate Y");
    expect(svg).toContain('data-feature="HSC_P" data-side="right"');
    expect(svg).toContain('data-feature="WORKEX_YES" data-side="left"');
    expect(svg).toContain('data-feature="HSC_S_SCI" data-side="none"');
    expect(svg).toContain("bar-selected");
  });
});
