import { describe, expect, it } from "vitest";

import { buildImageOverlay, gridGeometry } from "../src/render/image.js";
import { AttributionDoc } from "../src/types.js";

function segmentAttribution(scores: number[]): AttributionDoc {
  return {
    method: "kernel_shap",
    target_class: "ring",
    unit_kind: "segment",
    units: scores.map((_, i) => String(i)),
    scores,
    baseline_value: 0.1,
    prediction_value: 0.95,
    seed: 0,
    extras: {},
  };
}

describe("gridGeometry", () => {
  it("divides evenly when possible", () => {
    const rects = gridGeometry(32, 32, 4, 4);
    expect(rects).toHaveLength(16);
    expect(rects.every((r) => r.width === 8 && r.height === 8)).toBe(true);
    expect(rects[5]).toMatchObject({ x: 8, y: 8 });
  });

  it("absorbs remainder pixels into the last row and column", () => {
    const rects = gridGeometry(10, 10, 3, 3);
    expect(rects[0]).toMatchObject({ width: 3, height: 3 });
    expect(rects[2]).toMatchObject({ x: 6, width: 4, height: 3 });
    expect(rects[8]).toMatchObject({ x: 6, y: 6, width: 4, height: 4 });
    const area = rects.reduce((total, r) => total + r.width * r.height, 0);
    expect(area).toBe(100); // cells tile the image exactly
  });
});

describe("buildImageOverlay", () => {
  it("builds one tinted cell per segment with opacity by |score|", () => {
    const scores = Array(16).fill(0);
    scores[5] = 0.6;
    scores[10] = -0.3;
    const model = buildImageOverlay(32, 32, 4, 4, segmentAttribution(scores));
    expect(model.error).toBeNull();
    expect(model.cells).toHaveLength(16);
    const dominant = model.cells.find((c) => c.segment === 5)!;
    const opposite = model.cells.find((c) => c.segment === 10)!;
    expect(dominant.tint.alpha).toBe(1);
    expect(opposite.tint.alpha).toBeCloseTo(0.5);
    expect(dominant.tint.b).not.toBe(opposite.tint.b);
  });

  it("renders zero scores as no overlay (fully transparent)", () => {
    const model = buildImageOverlay(32, 32, 4, 4, segmentAttribution(Array(16).fill(0)));
    expect(model.cells.every((c) => c.tint.alpha === 0)).toBe(true);
  });

  it("carries target class and prediction value in the legend", () => {
    const model = buildImageOverlay(32, 32, 4, 4, segmentAttribution(Array(16).fill(0.1)));
    expect(model.legend).toMatchObject({ targetClass: "ring", predictionValue: 0.95 });
  });

  it("flags a segment-count mismatch", () => {
    const model = buildImageOverlay(32, 32, 2, 2, segmentAttribution(Array(16).fill(0.1)));
    expect(model.error).toMatch(/mismatch/);
    expect(model.cells).toEqual([]);
  });

  it("rejects non-segment attributions", () => {
    const attribution = {
      ...segmentAttribution(Array(16).fill(0)),
      unit_kind: "token" as const,
    };
    expect(buildImageOverlay(32, 32, 4, 4, attribution).error).toMatch(/expected segment/);
  });
});
