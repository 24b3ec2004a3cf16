// DOM wiring for the strategy sandbox.  All numbers shown come from API
// responses; edits are debounced into at most one in-flight simulation.

import { ApiClient, ApiError, NewestWins } from "./api.js";
import { capacitySeries, chartModel, renderChart, stockSeries, type Series } from "./chart.js";
import { debounce } from "./debounce.js";
import { fmt } from "./format.js";
import { MONTHS, policyToMonthly } from "./schedule.js";
import {
  buildScenario,
  clearPins,
  clearPresetRuns,
  initialState,
  loadPresetRuns,
  pinRun,
  setForcing,
  setHorizon,
  setMode,
  setMonthRate,
  setStock,
  type EditorState,
  type ForcingControls,
  type Run,
} from "./state.js";
import type { ScenarioDoc, SimulateResponse } from "./types.js";

const api = new ApiClient();
const tickets = new NewestWins();

let state: EditorState = initialState();
let currentRun: Run | null = null;

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const banner = () => $("banner");

function showError(message: string): void {
  banner().textContent = message;
  banner().classList.remove("hidden");
}

function clearError(): void {
  banner().classList.add("hidden");
}

function scheduleInputs(): HTMLInputElement[] {
  return MONTHS.map((_, m) => $(`month-${m}`) as HTMLInputElement);
}

function readForcingInputs(): void {
  const fields: (keyof ForcingControls)[] = ["r0", "k0", "alphaR", "alphaK", "phiR", "phiK"];
  for (const field of fields) {
    const input = $(`f-${field}`) as HTMLInputElement;
    state = setForcing(state, field, Number(input.value));
  }
}

function writeControls(): void {
  const f = state.forcing;
  ($("f-r0") as HTMLInputElement).value = String(f.r0);
  ($("f-k0") as HTMLInputElement).value = String(f.k0);
  ($("f-alphaR") as HTMLInputElement).value = String(f.alphaR);
  ($("f-alphaK") as HTMLInputElement).value = String(f.alphaK);
  ($("f-phiR") as HTMLInputElement).value = String(f.phiR);
  ($("f-phiK") as HTMLInputElement).value = String(f.phiK);
  ($("n0") as HTMLInputElement).value = String(state.n0);
  ($("horizon") as HTMLInputElement).value = String(state.horizon);
  (document.querySelector(
    `input[name="mode"][value="${state.mode}"]`) as HTMLInputElement).checked = true;
  $("rate-unit-label").textContent =
    state.mode === "quota" ? "tons per month" : "effort (1/year)";
  scheduleInputs().forEach((input, m) => { input.value = String(state.monthlyRates[m]); });
  $("advanced-json").textContent = JSON.stringify(buildScenario(state), null, 2);
}

function metricsRow(name: string, response: SimulateResponse): string {
  const m = response.metrics;
  const badge = m.depleted ? ' <span class="badge">DEPLETED</span>' : "";
  return `<tr><td>${name}${badge}</td><td>${fmt(m.n_bar)}</td><td>${fmt(m.min_stock)}</td>` +
    `<td>${fmt(m.final_stock)}</td><td>${fmt(m.total_catch)}</td></tr>`;
}

function redraw(): void {
  const series: Series[] = [];
  if (currentRun) {
    series.push(capacitySeries(currentRun.response.samples));
    series.push(stockSeries("current", currentRun.response.samples, "current"));
  }
  state.presetRuns.forEach((run, i) =>
    series.push(stockSeries(run.name, run.response.samples, `preset-${i % 3}`)));
  state.pinned.forEach((run, i) =>
    series.push(stockSeries(run.name, run.response.samples, `pin-${i % 4}`)));
  renderChart($("chart"), chartModel(series));

  const rows: string[] = [];
  if (currentRun) rows.push(metricsRow("current", currentRun.response));
  state.presetRuns.forEach((run) => rows.push(metricsRow(run.name, run.response)));
  state.pinned.forEach((run) => rows.push(metricsRow(run.name, run.response)));
  $("metrics-body").innerHTML = rows.join("");
  $("pin-count").textContent = `${state.pinned.length}/4`;

  const legend = series.map((s) =>
    `<span class="key ${s.cls}${s.dashed ? " dashed" : ""}">${s.label}</span>`);
  $("legend").innerHTML = legend.join(" ");
}

async function resimulate(): Promise<void> {
  const ticket = tickets.begin();
  let doc: ScenarioDoc;
  try {
    doc = buildScenario(state);
  } catch (err) {
    showError(String(err));
    return;
  }
  try {
    const response = await api.simulate(doc);
    if (!tickets.isCurrent(ticket)) return; // superseded by a newer edit
    currentRun = { name: "current", scenario: doc, response };
    clearError();
    redraw();
  } catch (err) {
    if (!tickets.isCurrent(ticket)) return;
    if (err instanceof ApiError) {
      showError(`${err.status}: ${err.message}`);
    } else {
      showError("connection failed; is the server running? retrying on next edit");
    }
  }
}

const debouncedResimulate = debounce(() => { void resimulate(); }, 300);

function onEdit(): void {
  writeControls();
  debouncedResimulate();
}

async function loadPreset(name: string): Promise<void> {
  try {
    const catalog = await api.presets();
    const entry = catalog.presets.find((p) => p.name === name);
    if (!entry) { showError(`unknown preset ${name}`); return; }
    const runs: Run[] = [];
    for (const scenario of entry.scenarios) {
      const response = await api.simulate(scenario);
      runs.push({ name: scenario.label ?? name, scenario, response });
    }
    state = loadPresetRuns(state, name, runs);
    const first = entry.scenarios[0];
    if (first) {
      state = setForcing(state, "alphaK", first.forcing.k.amplitude);
      state = setForcing(state, "alphaR", first.forcing.r.amplitude);
      state = setForcing(state, "phiK", first.forcing.k.phase);
      state = setForcing(state, "phiR", first.forcing.r.phase);
      state = setStock(state, first.n0);
      state = setHorizon(state, first.horizon);
      state = setMode(state, first.policy.mode);
      const view = policyToMonthly(first.policy);
      view.rates.forEach((rate, m) => { state = setMonthRate(state, m, rate); });
    }
    clearError();
    writeControls();
    redraw();
    debouncedResimulate();
  } catch (err) {
    showError(err instanceof ApiError ? err.message : "failed to load preset");
  }
}

function wire(): void {
  for (const field of ["r0", "k0", "alphaR", "alphaK", "phiR", "phiK"]) {
    $(`f-${field}`).addEventListener("input", () => { readForcingInputs(); onEdit(); });
  }
  $("n0").addEventListener("input", () => {
    state = setStock(state, Number(($("n0") as HTMLInputElement).value));
    onEdit();
  });
  $("horizon").addEventListener("input", () => {
    state = setHorizon(state, Number(($("horizon") as HTMLInputElement).value));
    onEdit();
  });
  document.querySelectorAll('input[name="mode"]').forEach((el) => {
    el.addEventListener("change", () => {
      state = setMode(state, (el as HTMLInputElement).value as "effort" | "quota");
      onEdit();
    });
  });
  scheduleInputs().forEach((input, m) => {
    input.addEventListener("input", () => {
      state = setMonthRate(state, m, Number(input.value));
      onEdit();
    });
  });
  $("pin").addEventListener("click", () => {
    if (!currentRun) return;
    const name = `pin ${state.pinned.length + 1}`;
    const outcome = pinRun(state, { ...currentRun, name });
    state = outcome.state;
    if (!outcome.pinned) showError("pin limit reached (4); clear pins first");
    redraw();
  });
  $("clear-pins").addEventListener("click", () => { state = clearPins(state); redraw(); });
  $("clear-preset").addEventListener("click", () => {
    state = clearPresetRuns(state);
    redraw();
  });
  $("load-preset").addEventListener("click", () => {
    const select = $("preset-select") as HTMLSelectElement;
    if (select.value) void loadPreset(select.value);
  });
}

async function boot(): Promise<void> {
  wire();
  writeControls();
  if (!(await api.health())) {
    showError("connection failed; is the server running? retrying on next edit");
  }
  try {
    const catalog = await api.presets();
    const select = $("preset-select") as HTMLSelectElement;
    select.innerHTML = catalog.presets
      .map((p) => `<option value="${p.name}">${p.name}</option>`)
      .join("");
  } catch {
    // banner already shown by the health probe
  }
  debouncedResimulate();
}

void boot();
