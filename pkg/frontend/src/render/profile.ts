/**
 * Dataset-profile view model: stat rows, histogram sparklines, and a tinted
 * correlation grid, all computed straight from the service document (the
 * client never recomputes statistics).
 */

import { divergingTint, Tint } from "../color.js";
import { ProfileDoc } from "../types.js";

export interface SparklineBar {
  /** Height as a fraction of the tallest bin. */
  fraction: number;
  count: number;
  label: string;
}

export interface ProfileRow {
  name: string;
  kind: string;
  missing: string;
  distinct: number;
  summary: string;
  sparkline: SparklineBar[];
  warnings: string[];
}

export interface CorrelationCell {
  row: string;
  col: string;
  value: number | null;
  tint: Tint | null;
}

export interface ProfileRenderModel {
  rowCount: number;
  rows: ProfileRow[];
  correlation: CorrelationCell[][];
  correlationColumns: string[];
  excluded: string[];
}

const fmt = (x: number): string =>
  Math.abs(x) >= 1000 ? x.toFixed(0) : x.toPrecision(4).replace(/\.?0+$/, "");

export function buildProfileView(profile: ProfileDoc): ProfileRenderModel {
  const warningsByColumn = new Map<string, string[]>();
  for (const w of profile.warnings) {
    const bucket = warningsByColumn.get(w.column) ?? [];
    bucket.push(`${w.kind}: ${w.detail}`);
    warningsByColumn.set(w.column, bucket);
  }

  const rows: ProfileRow[] = profile.columns.map((col) => {
    let summary = "";
    let sparkline: SparklineBar[] = [];
    if (col.stats && col.histogram) {
      const s = col.stats;
      summary = `min ${fmt(s.min)} · q2 ${fmt(s.q2)} · mean ${fmt(s.mean)} · max ${fmt(s.max)} · std ${fmt(s.std)}`;
      const tallest = Math.max(1, ...col.histogram.map((b) => b.count));
      sparkline = col.histogram.map((b) => ({
        fraction: b.count / tallest,
        count: b.count,
        label: `[${fmt(b.lower)}, ${fmt(b.upper)}]`,
      }));
    } else if (col.top_values) {
      summary = col.top_values
        .slice(0, 3)
        .map((t) => `${t.value} (${t.count})`)
        .join(", ");
      const tallest = Math.max(1, ...col.top_values.map((t) => t.count));
      sparkline = col.top_values.map((t) => ({
        fraction: t.count / tallest,
        count: t.count,
        label: t.value,
      }));
    }
    return {
      name: col.name,
      kind: col.inferred_kind,
      missing: `${col.missing_count}/${col.count}`,
      distinct: col.distinct_count,
      summary,
      sparkline,
      warnings: warningsByColumn.get(col.name) ?? [],
    };
  });

  const names = profile.correlation.columns;
  const correlation: CorrelationCell[][] = names.map((rowName, i) =>
    names.map((colName, j) => {
      const value = profile.correlation.matrix[i][j];
      return {
        row: rowName,
        col: colName,
        value,
        tint: value === null ? null : divergingTint(value),
      };
    }),
  );

  return {
    rowCount: profile.row_count,
    rows,
    correlation,
    correlationColumns: names,
    excluded: profile.correlation.excluded.map((e) => `${e.column}: ${e.reason}`),
  };
}
