import { describe, expect, it } from "vitest";

import { divergingTint, maxAbs, normalizeScores, tintToCss } from "../src/color.js";

describe("normalizeScores", () => {
  it("scales by the max absolute score", () => {
    expect(normalizeScores([2, -4, 1])).toEqual([0.5, -1, 0.25]);
  });

  it("maps an all-zero attribution to all-neutral", () => {
    expect(normalizeScores([0, 0, 0])).toEqual([0, 0, 0]);
  });

  it("keeps the strongest unit at full strength regardless of scale", () => {
    const small = normalizeScores([0.0001, -0.00005]);
    const large = normalizeScores([100, -50]);
    expect(small).toEqual(large);
  });
});

describe("divergingTint", () => {
  it("uses one hue for positive and another for negative", () => {
    const positive = divergingTint(0.8);
    const negative = divergingTint(-0.8);
    expect(positive.alpha).toBeCloseTo(0.8);
    expect(negative.alpha).toBeCloseTo(0.8);
    expect([positive.r, positive.g, positive.b]).not.toEqual([
      negative.r, negative.g, negative.b,
    ]);
  });

  it("renders the neutral midpoint fully transparent", () => {
    expect(divergingTint(0).alpha).toBe(0);
  });

  it("clamps runaway values", () => {
    expect(divergingTint(3).alpha).toBe(1);
  });
});

describe("helpers", () => {
  it("maxAbs", () => {
    expect(maxAbs([-3, 2])).toBe(3);
    expect(maxAbs([])).toBe(0);
  });

  it("tintToCss emits rgba", () => {
    expect(tintToCss({ r: 1, g: 2, b: 3, alpha: 0.5 })).toBe("rgba(1, 2, 3, 0.500)");
  });
});
