// Conversion between the twelve-month editor grid and policy segments.
// Months are exactly 1/12 year; quota entries are tons per month while the
// wire format carries tons per year.

import type { PolicyDoc, SegmentDoc } from "./types.js";

export const MONTHS = [
  "Jan", "Feb", "Mar", "Apr", "May", "Jun",
  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
] as const;

export type Mode = "effort" | "quota";

/** Editor rate entry -> wire rate (tons/month becomes tons/year). */
export function wireRate(entry: number, mode: Mode): number {
  return mode === "quota" ? entry * 12 : entry;
}

export function editorRate(wire: number, mode: Mode): number {
  return mode === "quota" ? wire / 12 : wire;
}

/** Twelve monthly entries to an annually repeating policy document. */
export function monthlyToPolicy(rates: readonly number[], mode: Mode): PolicyDoc {
  if (rates.length !== 12) throw new Error(`expected 12 monthly rates, got ${rates.length}`);
  const segments: SegmentDoc[] = [];
  for (let m = 0; m < 12; m++) {
    const rate = wireRate(rates[m], mode);
    if (rate < 0) throw new Error(`month ${MONTHS[m]}: rate must be nonnegative`);
    if (rate === 0) continue;
    const last = segments[segments.length - 1];
    if (last && last.rate === rate && last.end === m / 12) {
      last.end = (m + 1) / 12; // extend a run of equal months
    } else {
      segments.push({ start: m / 12, end: (m + 1) / 12, rate });
    }
  }
  return { mode, segments, repeat: 1.0 };
}

export interface MonthlyView {
  rates: number[];
  /** False when the segments are not month-aligned and the grid is a sampling. */
  exact: boolean;
}

/** Policy document back to the editor grid, sampling at month midpoints. */
export function policyToMonthly(policy: PolicyDoc): MonthlyView {
  const rateAt = (t: number): number => {
    let tm = t;
    if (policy.repeat !== undefined && policy.repeat > 0) {
      tm = t - policy.repeat * Math.floor(t / policy.repeat);
    }
    for (const seg of policy.segments) {
      if (seg.start <= tm && tm < seg.end) return seg.rate;
    }
    return 0;
  };
  const rates: number[] = [];
  let exact = policy.repeat === 1.0 || policy.segments.length === 0;
  for (const seg of policy.segments) {
    const alignedStart = Math.abs(seg.start * 12 - Math.round(seg.start * 12)) < 1e-9;
    const alignedEnd = Math.abs(seg.end * 12 - Math.round(seg.end * 12)) < 1e-9;
    if (!alignedStart || !alignedEnd) exact = false;
  }
  for (let m = 0; m < 12; m++) {
    rates.push(editorRate(rateAt((m + 0.5) / 12), policy.mode));
  }
  return { rates, exact };
}
