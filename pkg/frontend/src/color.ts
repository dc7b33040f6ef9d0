/**
 * Diverging two-hue palette with a neutral midpoint for signed scores.
 *
 * Normalization is per attribution: every score is scaled by the maximum
 * absolute score of that attribution, so the strongest unit always renders
 * at full opacity and an all-zero attribution renders fully neutral.
 */

export interface Tint {
  r: number;
  g: number;
  b: number;
  /** 0 = neutral midpoint, 1 = strongest unit of this attribution. */
  alpha: number;
}

const POSITIVE = { r: 25, g: 118, b: 210 }; // blue: pushes toward the class
const NEGATIVE = { r: 211, g: 47, b: 47 }; //  red: pushes away

export function maxAbs(scores: readonly number[]): number {
  let best = 0;
  for (const s of scores) best = Math.max(best, Math.abs(s));
  return best;
}

/** Scores scaled to [-1, 1] by the attribution's max |score|. */
export function normalizeScores(scores: readonly number[]): number[] {
  const scale = maxAbs(scores);
  if (scale === 0) return scores.map(() => 0);
  return scores.map((s) => s / scale);
}

/** Tint for one normalized score in [-1, 1]. */
export function divergingTint(normalized: number): Tint {
  const hue = normalized >= 0 ? POSITIVE : NEGATIVE;
  return { ...hue, alpha: Math.min(1, Math.abs(normalized)) };
}

export function tintToCss(tint: Tint): string {
  return `rgba(${tint.r}, ${tint.g}, ${tint.b}, ${tint.alpha.toFixed(3)})`;
}
