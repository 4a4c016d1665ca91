// SVG renderers for the pair comparison: a radar juxtaposing the two
// items' attribute values and a diverging bar chart of contribution
// shares. Geometry is computed by exported pure helpers so the layout is
// unit-testable without a DOM.
//
// Colour note: the two sides use two neutral hues on purpose; nothing in
// the charts encodes "good" or "bad".

import type { BarRow, RadarRow } from "./types.js";

export const SIDE_A_COLOR = "#5b7cfa";
export const SIDE_B_COLOR = "#9a6fd4";

export interface RadarPoint {
  feature: string;
  angle: number;       // radians, 12 o'clock start, clockwise
  valueA: number;      // normalized 0..1 along the axis
  valueB: number;
  marker: "A" | "B" | null;
}

/** Normalize each axis independently: dummy rows (50/100) map onto 0.5/1,
 * numeric rows span a padded min..max of the two values. */
export function radarPoints(rows: RadarRow[]): RadarPoint[] {
  const n = rows.length;
  return rows.map((row, i) => {
    const angle = (2 * Math.PI * i) / Math.max(n, 1);
    let valueA: number;
    let valueB: number;
    const isDummy =
      (row.display_a === 50 || row.display_a === 100) &&
      (row.display_b === 50 || row.display_b === 100);
    if (isDummy) {
      valueA = row.display_a / 100;
      valueB = row.display_b / 100;
    } else {
      const lo = Math.min(row.display_a, row.display_b);
      const hi = Math.max(row.display_a, row.display_b);
      const pad = Math.max((hi - lo) * 0.5, hi * 0.1, 1e-9);
      valueA = (row.display_a - lo + pad) / (hi - lo + 2 * pad);
      valueB = (row.display_b - lo + pad) / (hi - lo + 2 * pad);
    }
    return { feature: row.feature, angle, valueA, valueB, marker: row.advantage_marker };
  });
}

export interface BarGeometry {
  feature: string;
  x: number;           // left edge of the bar, px
  width: number;       // px, 0 for a null bar
  side: "right" | "left" | null;
  selected: boolean;
  share: number;       // signed percentage, for the tooltip
}

/** Horizontal diverging layout around a central axis: bars to the right
 * favour the current order (item A), bars to the left oppose it. */
export function barGeometry(bars: BarRow[], plotWidth: number): BarGeometry[] {
  const half = plotWidth / 2;
  const maxShare = Math.max(...bars.map((b) => Math.abs(b.signed_share)), 1e-9);
  return bars.map((b) => {
    const length = (Math.abs(b.signed_share) / maxShare) * (half - 4);
    if (b.direction === "right") {
      return { feature: b.feature, x: half, width: length, side: "right" as const,
               selected: b.selected, share: b.signed_share };
    }
    if (b.direction === "left") {
      return { feature: b.feature, x: half - length, width: length, side: "left" as const,
               selected: b.selected, share: b.signed_share };
    }
    return { feature: b.feature, x: half, width: 0, side: null,
             selected: b.selected, share: 0 };
  });
}

function polygonPath(points: RadarPoint[], side: "A" | "B", cx: number, cy: number, r: number): string {
  return points
    .map((p) => {
      const v = side === "A" ? p.valueA : p.valueB;
      const x = cx + r * v * Math.sin(p.angle);
      const y = cy - r * v * Math.cos(p.angle);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
}

export function renderRadar(rows: RadarRow[], nameA: string, nameB: string): string {
  const size = 320;
  const cx = size / 2;
  const cy = size / 2;
  const r = size / 2 - 54;
  const points = radarPoints(rows);

  const axes = points
    .map((p) => {
      const x = cx + r * Math.sin(p.angle);
      const y = cy - r * Math.cos(p.angle);
      const lx = cx + (r + 16) * Math.sin(p.angle);
      const ly = cy - (r + 16) * Math.cos(p.angle);
      return (
        `<line x1="${cx}" y1="${cy}" x2="${x.toFixed(1)}" y2="${y.toFixed(1)}" class="radar-axis"/>` +
        `<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" class="radar-label" text-anchor="middle">${p.feature}</text>`
      );
    })
    .join("");

  const markers = points
    .filter((p) => p.marker !== null)
    .map((p) => {
      const v = p.marker === "A" ? p.valueA : p.valueB;
      const x = cx + r * (v + 0.08) * Math.sin(p.angle);
      const y = cy - r * (v + 0.08) * Math.cos(p.angle);
      const color = p.marker === "A" ? SIDE_A_COLOR : SIDE_B_COLOR;
      return `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="4" fill="${color}" data-marker="${p.marker}" data-feature="${p.feature}"/>`;
    })
    .join("");

  return (
    `<svg viewBox="0 0 ${size} ${size}" class="radar" role="img" aria-label="attribute juxtaposition">` +
    axes +
    `<polygon points="${polygonPath(points, "A", cx, cy, r)}" fill="${SIDE_A_COLOR}33" stroke="${SIDE_A_COLOR}" data-side="A"/>` +
    `<polygon points="${polygonPath(points, "B", cx, cy, r)}" fill="${SIDE_B_COLOR}33" stroke="${SIDE_B_COLOR}" data-side="B"/>` +
    markers +
    `<g class="radar-legend">` +
    `<rect x="8" y="8" width="10" height="10" fill="${SIDE_A_COLOR}"/><text x="22" y="17">${nameA}</text>` +
    `<rect x="8" y="24" width="10" height="10" fill="${SIDE_B_COLOR}"/><text x="22" y="33">${nameB}</text>` +
    `</g></svg>`
  );
}

export function renderBars(bars: BarRow[], nameA: string, nameB: string): string {
  const plotWidth = 360;
  const rowHeight = 26;
  const labelWidth = 150;
  const height = bars.length * rowHeight + 30;
  const geometry = barGeometry(bars, plotWidth);

  const rows = geometry
    .map((g, i) => {
      const y = 20 + i * rowHeight;
      const color = g.side === "right" ? SIDE_A_COLOR : g.side === "left" ? SIDE_B_COLOR : "#b9bec9";
      const cls = `bar${g.selected ? " bar-selected" : ""}${g.side === null ? " bar-null" : ""}`;
      const bar =
        g.side === null
          ? `<circle cx="${labelWidth + g.x}" cy="${y + 9}" r="2.5" class="${cls}" data-feature="${g.feature}" data-side="none"/>`
          : `<rect x="${labelWidth + g.x}" y="${y}" width="${Math.max(g.width, 1).toFixed(1)}" height="18" fill="${color}" class="${cls}" data-feature="${g.feature}" data-side="${g.side}"/>`;
      return (
        `<text x="${labelWidth - 8}" y="${y + 13}" text-anchor="end" class="bar-label">${g.feature}</text>` + bar
      );
    })
    .join("");

  const axisX = labelWidth + plotWidth / 2;
  return (
    `<svg viewBox="0 0 ${labelWidth + plotWidth + 10} ${height}" class="bars" role="img" aria-label="contribution shares">` +
    `<line x1="${axisX}" y1="12" x2="${axisX}" y2="${height - 6}" class="bars-axis"/>` +
    `<text x="${axisX + 6}" y="10" class="bars-caption">supports ${nameA} above ${nameB}</text>` +
    `<text x="${axisX - 6}" y="10" text-anchor="end" class="bars-caption">supports ${nameB}</text>` +
    rows +
    `</svg>`
  );
}
