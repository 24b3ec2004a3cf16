// Wire types mirroring the simulation service's JSON schemas.

export interface SinusoidDoc {
  baseline: number;
  amplitude: number;
  phase: number;
  period: number;
}

export interface SegmentDoc {
  start: number;
  end: number;
  rate: number;
}

export interface PolicyDoc {
  mode: "effort" | "quota";
  segments: SegmentDoc[];
  repeat?: number;
}

export interface ScenarioDoc {
  growth: { r0: number; beta: number; gamma: number };
  forcing: { r: SinusoidDoc; k: SinusoidDoc; system_period?: number };
  policy: PolicyDoc;
  n0: number;
  horizon: number;
  label?: string;
}

export interface SamplePoint {
  t: number;
  N: number;
  K: number;
  r: number;
  effort: number;
  harvest_rate: number;
}

export interface Metrics {
  n_bar: number;
  k_bar: number;
  min_stock: number;
  final_stock: number;
  total_catch: number;
  depleted: boolean;
}

export interface SimulateResponse {
  samples: SamplePoint[];
  metrics: Metrics;
  events: { t: number; kind: string }[];
}

export interface PresetEntry {
  name: string;
  scenarios: ScenarioDoc[];
}

export interface PresetsResponse {
  presets: PresetEntry[];
}
