/**
 * Signed horizontal bars for tabular attributions and permutation
 * importances, strongest first.
 */

import { divergingTint, maxAbs, Tint } from "../color.js";
import { AttributionDoc, GlobalImportanceDoc } from "../types.js";

export interface FeatureBar {
  unit: string;
  score: number;
  /** Signed fraction of the strongest |score|; drives the bar length. */
  normalized: number;
  tint: Tint;
}

function toBars(units: readonly string[], scores: readonly number[]): FeatureBar[] {
  const scale = maxAbs(scores);
  const bars = units.map((unit, i) => {
    const normalized = scale === 0 ? 0 : scores[i] / scale;
    return { unit, score: scores[i], normalized, tint: divergingTint(normalized) };
  });
  bars.sort((a, b) => Math.abs(b.score) - Math.abs(a.score) || (a.unit < b.unit ? -1 : 1));
  return bars;
}

export function buildFeatureBars(attribution: AttributionDoc): FeatureBar[] {
  return toBars(attribution.units, attribution.scores);
}

export function buildImportanceBars(importance: GlobalImportanceDoc): FeatureBar[] {
  return toBars(importance.feature_names, importance.importances);
}
