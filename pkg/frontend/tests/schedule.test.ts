import { describe, expect, it } from "vitest";

import { monthlyToPolicy, policyToMonthly } from "../src/schedule.js";

describe("monthlyToPolicy", () => {
  it("converts tons/month to tons/year and merges equal runs", () => {
    const rates = [0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 0]; // June..Nov at 2 t/mo
    const policy = monthlyToPolicy(rates, "quota");
    expect(policy.mode).toBe("quota");
    expect(policy.repeat).toBe(1.0);
    expect(policy.segments).toEqual([{ start: 5 / 12, end: 11 / 12, rate: 24 }]);
  });

  it("produces one segment per distinct run", () => {
    const rates = [1, 1, 0, 3, 3, 0, 0, 0, 0, 0, 0, 2];
    const policy = monthlyToPolicy(rates, "quota");
    expect(policy.segments).toEqual([
      { start: 0, end: 2 / 12, rate: 12 },
      { start: 3 / 12, end: 5 / 12, rate: 36 },
      { start: 11 / 12, end: 1, rate: 24 },
    ]);
  });

  it("keeps effort rates unscaled", () => {
    const rates = new Array(12).fill(0.3);
    const policy = monthlyToPolicy(rates, "effort");
    expect(policy.segments).toEqual([{ start: 0, end: 1, rate: 0.3 }]);
  });

  it("rejects wrong grid sizes and negative rates", () => {
    expect(() => monthlyToPolicy([1, 2, 3], "quota")).toThrow("12");
    const bad = new Array(12).fill(0);
    bad[3] = -1;
    expect(() => monthlyToPolicy(bad, "quota")).toThrow("nonnegative");
  });
});

describe("policyToMonthly", () => {
  it("round-trips a month-aligned schedule exactly", () => {
    const rates = [0, 0, 4, 4, 4, 0, 0, 0, 2, 2, 2, 0];
    const view = policyToMonthly(monthlyToPolicy(rates, "quota"));
    expect(view.exact).toBe(true);
    expect(view.rates).toEqual(rates);
  });

  it("flags non-month-aligned segments as sampled", () => {
    const view = policyToMonthly({
      mode: "quota",
      segments: [{ start: 0.1, end: 0.6, rate: 12 }],
      repeat: 1.0,
    });
    expect(view.exact).toBe(false);
    expect(view.rates[3]).toBe(1); // mid-April falls inside the segment
  });

  it("handles effort mode and empty schedules", () => {
    const view = policyToMonthly({ mode: "effort", segments: [], repeat: 1.0 });
    expect(view.rates).toEqual(new Array(12).fill(0));
    expect(view.exact).toBe(true);
  });
});
