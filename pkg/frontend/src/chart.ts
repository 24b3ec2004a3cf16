// SVG time-series chart, dependency free.  chartModel is pure and unit
// tested; render writes the markup.

import type { SamplePoint } from "./types.js";

export interface Series {
  label: string;
  times: number[];
  values: number[];
  cls: string; // CSS class controlling stroke
  dashed?: boolean;
}

export interface PathSpec {
  d: string;
  cls: string;
  dashed: boolean;
  label: string;
}

export interface ChartModel {
  width: number;
  height: number;
  paths: PathSpec[];
  xTicks: { px: number; label: string }[];
  yTicks: { py: number; label: string }[];
}

const PAD = { left: 46, right: 12, top: 10, bottom: 24 };

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const raw = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw) ?? raw;
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-12; v += step) ticks.push(v);
  return ticks;
}

export function stockSeries(label: string, samples: SamplePoint[], cls: string): Series {
  return { label, times: samples.map((s) => s.t), values: samples.map((s) => s.N), cls };
}

export function capacitySeries(samples: SamplePoint[]): Series {
  return {
    label: "K(t)",
    times: samples.map((s) => s.t),
    values: samples.map((s) => s.K),
    cls: "capacity",
    dashed: true,
  };
}

export function chartModel(seriesList: Series[], width = 760, height = 340): ChartModel {
  const drawable = seriesList.filter((s) => s.times.length > 1);
  if (drawable.length === 0) {
    return { width, height, paths: [], xTicks: [], yTicks: [] };
  }
  let xLo = Infinity, xHi = -Infinity, yLo = 0, yHi = -Infinity;
  for (const s of drawable) {
    xLo = Math.min(xLo, s.times[0]);
    xHi = Math.max(xHi, s.times[s.times.length - 1]);
    for (const v of s.values) yHi = Math.max(yHi, v);
  }
  if (!(yHi > yLo)) yHi = yLo + 1;
  const plotW = width - PAD.left - PAD.right;
  const plotH = height - PAD.top - PAD.bottom;
  const sx = (t: number) => PAD.left + ((t - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => PAD.top + (1 - (v - yLo) / (yHi - yLo)) * plotH;

  const paths: PathSpec[] = drawable.map((s) => {
    // cap the polyline at ~2 points per pixel
    const stride = Math.max(1, Math.floor(s.times.length / (2 * plotW)));
    const parts: string[] = [];
    for (let i = 0; i < s.times.length; i += stride) {
      const cmd = i === 0 ? "M" : "L";
      parts.push(`${cmd}${sx(s.times[i]).toFixed(2)} ${sy(s.values[i]).toFixed(2)}`);
    }
    const last = s.times.length - 1;
    if (last % stride !== 0) {
      parts.push(`L${sx(s.times[last]).toFixed(2)} ${sy(s.values[last]).toFixed(2)}`);
    }
    return { d: parts.join(" "), cls: s.cls, dashed: s.dashed ?? false, label: s.label };
  });

  return {
    width,
    height,
    paths,
    xTicks: niceTicks(xLo, xHi, 8).map((v) => ({
      px: sx(v), label: v.toFixed(Math.abs(v) < 10 && v !== Math.round(v) ? 1 : 0),
    })),
    yTicks: niceTicks(yLo, yHi, 6).map((v) => ({ py: sy(v), label: String(v) })),
  };
}

export function renderChart(el: HTMLElement, model: ChartModel): void {
  const axis: string[] = [];
  for (const t of model.xTicks) {
    axis.push(`<line x1="${t.px}" y1="${model.height - PAD.bottom}" x2="${t.px}" ` +
      `y2="${model.height - PAD.bottom + 4}" class="tick"/>`);
    axis.push(`<text x="${t.px}" y="${model.height - 6}" class="tick-label" ` +
      `text-anchor="middle">${t.label}</text>`);
  }
  for (const t of model.yTicks) {
    axis.push(`<line x1="${PAD.left}" y1="${t.py}" x2="${model.width - PAD.right}" ` +
      `y2="${t.py}" class="grid"/>`);
    axis.push(`<text x="${PAD.left - 6}" y="${t.py + 3}" class="tick-label" ` +
      `text-anchor="end">${t.label}</text>`);
  }
  const paths = model.paths.map((p) =>
    `<path d="${p.d}" class="series ${p.cls}"${p.dashed ? ' stroke-dasharray="6 4"' : ""}/>`);
  el.innerHTML =
    `<svg viewBox="0 0 ${model.width} ${model.height}" role="img">` +
    axis.join("") + paths.join("") + "</svg>";
}
