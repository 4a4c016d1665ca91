// Wire formats of the ranklens service JSON API.

export interface RankingEntry {
  rank: number;
  item_id: string;
  score: number;
  in_top_k: boolean;
}

export interface Ranking {
  entries: RankingEntry[];
  k: number;
  n: number;
  overridden: boolean;
  model_order: string[];
}

export type Beneficiary = "A" | "B" | "Neither";

export interface Contribution {
  feature: string;
  kind: "numeric" | "categorical" | "binary";
  raw_a: number;
  raw_b: number;
  delta: number;
  importance: number;
  beneficiary: Beneficiary;
  share: number;
}

export interface Report {
  item_a: string;
  item_b: string;
  total_delta: number;
  contributions: Contribution[];
  selected: string[];
  policy: string | null;
  indistinguishable: boolean;
}

export interface RadarRow {
  feature: string;
  display_a: number;
  display_b: number;
  advantage_marker: "A" | "B" | null;
}

export type BarDirection = "right" | "left" | null;

export interface BarRow {
  feature: string;
  signed_share: number;
  direction: BarDirection;
  selected: boolean;
}

export interface ChartData {
  radar: RadarRow[];
  bars: BarRow[];
}

export interface ExplanationText {
  paragraphs: string[];
  subjects: string[];
}

export interface ContrastBundle {
  report: Report;
  text: ExplanationText;
  chart_data: ChartData;
}

export type Justification = "agree" | "disagree";
export type Position = "satisfied" | "unsatisfied";
export type Action = "confirm" | "swap";

export interface DecisionIn {
  item_a: string;
  item_b: string;
  justification: Justification;
  position: Position;
  action: Action;
  note?: string | null;
}

export interface DecisionOut {
  record: DecisionIn & { timestamp: string };
  scenario: number;
}

export interface Summary {
  counts: Record<string, number>;
  disagreement_features: { feature: string; count: number }[];
}

export interface Problem {
  title: string;
  status: number;
  code: string;
  detail: string;
}
