/**
 * Segment-overlay render model: one rectangle per grid cell, tinted by the
 * cell's signed score, plus a legend carrying the target class and the
 * explained prediction value.
 *
 * Cell geometry mirrors the service's grid segmentation: boundaries at
 * evenly divided pixel indices, remainder pixels absorbed by the last
 * row/column of cells.
 */

import { divergingTint, maxAbs, Tint } from "../color.js";
import { AttributionDoc } from "../types.js";

export interface OverlayCell {
  segment: number;
  x: number;
  y: number;
  width: number;
  height: number;
  score: number;
  tint: Tint;
}

export interface ImageRenderModel {
  cells: OverlayCell[];
  legend: { targetClass: string; predictionValue: number; maxAbsScore: number };
  error: string | null;
}

export interface CellRect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export function gridGeometry(
  height: number,
  width: number,
  rows: number,
  cols: number,
): CellRect[] {
  const cellH = Math.floor(height / rows);
  const cellW = Math.floor(width / cols);
  const rects: CellRect[] = [];
  for (let r = 0; r < rows; r++) {
    const y = r * cellH;
    const h = r === rows - 1 ? height - y : cellH;
    for (let c = 0; c < cols; c++) {
      const x = c * cellW;
      const w = c === cols - 1 ? width - x : cellW;
      rects.push({ x, y, width: w, height: h });
    }
  }
  return rects;
}

export function buildImageOverlay(
  height: number,
  width: number,
  rows: number,
  cols: number,
  attribution: AttributionDoc,
): ImageRenderModel {
  const legend = {
    targetClass: attribution.target_class,
    predictionValue: attribution.prediction_value,
    maxAbsScore: maxAbs(attribution.scores),
  };
  if (attribution.unit_kind !== "segment") {
    return { cells: [], legend, error: `expected segment attribution, got ${attribution.unit_kind}` };
  }
  const expected = rows * cols;
  if (attribution.units.length !== expected) {
    return {
      cells: [],
      legend,
      error:
        `segment count mismatch: grid has ${expected} cells, ` +
        `attribution has ${attribution.units.length}`,
    };
  }
  const rects = gridGeometry(height, width, rows, cols);
  const scale = legend.maxAbsScore;
  const cells: OverlayCell[] = [];
  for (let i = 0; i < expected; i++) {
    const segment = Number(attribution.units[i]);
    if (!Number.isInteger(segment) || segment < 0 || segment >= expected) {
      return { cells: [], legend, error: `unit ${attribution.units[i]} is not a segment id` };
    }
    const score = attribution.scores[i];
    cells.push({
      segment,
      ...rects[segment],
      score,
      tint: divergingTint(scale === 0 ? 0 : score / scale),
    });
  }
  return { cells, legend, error: null };
}
