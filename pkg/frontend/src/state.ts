// Editor state and pure reducers.  The UI never computes model dynamics:
// state holds the manager's choices plus API responses, nothing derived.

import { monthlyToPolicy, type Mode } from "./schedule.js";
import type { ScenarioDoc, SimulateResponse } from "./types.js";

export interface ForcingControls {
  r0: number;
  k0: number;
  alphaR: number;
  alphaK: number;
  phiR: number;
  phiK: number;
}

export interface Run {
  name: string;
  scenario: ScenarioDoc;
  response: SimulateResponse;
}

export interface EditorState {
  mode: Mode;
  monthlyRates: number[]; // 12 entries, tons/month (quota) or 1/year (effort)
  forcing: ForcingControls;
  n0: number;
  horizon: number;
  pinned: readonly Run[]; // at most MAX_PINS, frozen once pinned
  presetRuns: readonly Run[];
  presetName: string | null;
}

export const MAX_PINS = 4;

export function initialState(): EditorState {
  return {
    mode: "quota",
    monthlyRates: new Array(12).fill(0),
    forcing: { r0: 1.0, k0: 100.0, alphaR: 0.0, alphaK: 0.5, phiR: 0.0, phiK: 0.2 },
    n0: 50.0,
    horizon: 5.0,
    pinned: [],
    presetRuns: [],
    presetName: null,
  };
}

const clamp = (x: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, x));

export function setMonthRate(state: EditorState, month: number, rate: number): EditorState {
  if (month < 0 || month > 11) return state;
  const monthlyRates = state.monthlyRates.slice();
  monthlyRates[month] = Math.max(0, rate);
  return { ...state, monthlyRates };
}

export function setMode(state: EditorState, mode: Mode): EditorState {
  return mode === state.mode ? state : { ...state, mode };
}

export function setForcing(state: EditorState, field: keyof ForcingControls,
                           value: number): EditorState {
  const next = { ...state.forcing };
  switch (field) {
    case "alphaR":
    case "alphaK":
      next[field] = clamp(value, 0, 0.99);
      break;
    case "r0":
    case "k0":
      next[field] = Math.max(1e-6, value);
      break;
    default:
      next[field] = value;
  }
  return { ...state, forcing: next };
}

export function setStock(state: EditorState, n0: number): EditorState {
  return { ...state, n0: Math.max(1e-6, n0) };
}

export function setHorizon(state: EditorState, horizon: number): EditorState {
  return { ...state, horizon: clamp(horizon, 0.1, 200) };
}

export interface PinOutcome {
  state: EditorState;
  pinned: boolean;
}

export function pinRun(state: EditorState, run: Run): PinOutcome {
  if (state.pinned.length >= MAX_PINS) return { state, pinned: false };
  const frozen = Object.freeze({
    name: run.name,
    scenario: Object.freeze(run.scenario),
    response: Object.freeze(run.response),
  });
  return { state: { ...state, pinned: [...state.pinned, frozen] }, pinned: true };
}

export function clearPins(state: EditorState): EditorState {
  return state.pinned.length === 0 ? state : { ...state, pinned: [] };
}

export function loadPresetRuns(state: EditorState, name: string,
                               runs: Run[]): EditorState {
  return { ...state, presetName: name, presetRuns: runs.map((r) => Object.freeze(r)) };
}

export function clearPresetRuns(state: EditorState): EditorState {
  return { ...state, presetName: null, presetRuns: [] };
}

/** The scenario document for the current editor state. */
export function buildScenario(state: EditorState): ScenarioDoc {
  const f = state.forcing;
  return {
    growth: { r0: f.r0, beta: 0.2, gamma: 5.0 },
    forcing: {
      r: { baseline: f.r0, amplitude: f.alphaR, phase: f.phiR, period: 1.0 },
      k: { baseline: f.k0, amplitude: f.alphaK, phase: f.phiK, period: 1.0 },
    },
    policy: monthlyToPolicy(state.monthlyRates, state.mode),
    n0: state.n0,
    horizon: state.horizon,
    label: "sandbox",
  };
}
