// Editor state and pure reducers.  The UI never computes model dynamics:
// state holds the manager's choices plus API responses, nothing derived.
import { monthlyToPolicy } from "./schedule.js";
export const MAX_PINS = 4;
export function initialState() {
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
const clamp = (x, lo, hi) => Math.min(hi, Math.max(lo, x));
export function setMonthRate(state, month, rate) {
    if (month < 0 || month > 11)
        return state;
    const monthlyRates = state.monthlyRates.slice();
    monthlyRates[month] = Math.max(0, rate);
    return { ...state, monthlyRates };
}
export function setMode(state, mode) {
    return mode === state.mode ? state : { ...state, mode };
}
export function setForcing(state, field, value) {
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
export function setStock(state, n0) {
    return { ...state, n0: Math.max(1e-6, n0) };
}
export function setHorizon(state, horizon) {
    return { ...state, horizon: clamp(horizon, 0.1, 200) };
}
export function pinRun(state, run) {
    if (state.pinned.length >= MAX_PINS)
        return { state, pinned: false };
    const frozen = Object.freeze({
        name: run.name,
        scenario: Object.freeze(run.scenario),
        response: Object.freeze(run.response),
    });
    return { state: { ...state, pinned: [...state.pinned, frozen] }, pinned: true };
}
export function clearPins(state) {
    return state.pinned.length === 0 ? state : { ...state, pinned: [] };
}
export function loadPresetRuns(state, name, runs) {
    return { ...state, presetName: name, presetRuns: runs.map((r) => Object.freeze(r)) };
}
export function clearPresetRuns(state) {
    return { ...state, presetName: null, presetRuns: [] };
}
/** The scenario document for the current editor state. */
export function buildScenario(state) {
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
