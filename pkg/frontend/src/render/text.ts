/**
 * Token-highlight render model: the raw text split into plain gaps and
 * tinted token segments. Unit/text mismatches become a visible error state,
 * never a silent drop.
 */

import { divergingTint, maxAbs, Tint } from "../color.js";
import { tokenSpans, unitId } from "../tokenize.js";
import { AttributionDoc } from "../types.js";

export interface TextSegment {
  text: string;
  /** null for inter-token gaps (whitespace, punctuation). */
  tint: Tint | null;
  score: number | null;
  unit: string | null;
}

export interface TextRenderModel {
  segments: TextSegment[];
  maxAbsScore: number;
  error: string | null;
}

export function buildTextRender(
  rawText: string,
  attribution: AttributionDoc,
): TextRenderModel {
  if (attribution.unit_kind !== "token") {
    return {
      segments: [],
      maxAbsScore: 0,
      error: `expected token attribution, got ${attribution.unit_kind}`,
    };
  }
  const spans = tokenSpans(rawText);
  const derived = spans.map(unitId);
  const received = attribution.units;
  if (
    derived.length !== received.length ||
    derived.some((u, i) => u !== received[i])
  ) {
    return {
      segments: [],
      maxAbsScore: 0,
      error:
        "attribution units do not match the text's tokens " +
        `(text has ${derived.length}, attribution has ${received.length})`,
    };
  }
  const scale = maxAbs(attribution.scores);
  const normalized = scale === 0
    ? attribution.scores.map(() => 0)
    : attribution.scores.map((s) => s / scale);

  const segments: TextSegment[] = [];
  let cursor = 0;
  spans.forEach((span, i) => {
    if (span.start > cursor) {
      segments.push({
        text: rawText.slice(cursor, span.start),
        tint: null,
        score: null,
        unit: null,
      });
    }
    segments.push({
      text: rawText.slice(span.start, span.end),
      tint: divergingTint(normalized[i]),
      score: attribution.scores[i],
      unit: received[i],
    });
    cursor = span.end;
  });
  if (cursor < rawText.length) {
    segments.push({ text: rawText.slice(cursor), tint: null, score: null, unit: null });
  }
  return { segments, maxAbsScore: scale, error: null };
}
