/**
 * Single-row CSV parsing for the tabular input form: one data line of
 * feature values (an optional header line must match the schema order).
 */

import { TabularSampleDoc } from "./types.js";

export interface SchemaColumnDoc {
  name: string;
  kind: "numeric" | "categorical" | "boolean";
  categories?: string[];
}

const TRUE_WORDS = new Set(["true", "yes", "1"]);
const FALSE_WORDS = new Set(["false", "no", "0"]);

function splitCsvLine(line: string): string[] {
  return line.split(",").map((cell) => cell.trim());
}

export function parseSingleRowCsv(
  content: string,
  columns: SchemaColumnDoc[],
): TabularSampleDoc {
  const lines = content.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new Error("the CSV file is empty");
  }
  if (lines.length > 2) {
    throw new Error(`expected one data row, found ${lines.length} lines`);
  }
  let row = splitCsvLine(lines[lines.length - 1]);
  if (lines.length === 2) {
    const header = splitCsvLine(lines[0]);
    const expected = columns.map((c) => c.name);
    if (header.join(",") !== expected.join(",")) {
      throw new Error(
        `header [${header.join(", ")}] does not match the scenario columns ` +
        `[${expected.join(", ")}]`,
      );
    }
  }
  if (row.length !== columns.length) {
    throw new Error(
      `expected ${columns.length} values, found ${row.length}`,
    );
  }
  const values = row.map((cell, i) => parseCell(cell, columns[i]));
  return { kind: "tabular", values };
}

function parseCell(
  cell: string,
  column: SchemaColumnDoc,
): number | string | boolean | null {
  if (cell === "") return null;
  if (column.kind === "numeric") {
    const value = Number(cell);
    if (!Number.isFinite(value)) {
      throw new Error(`column ${column.name}: "${cell}" is not a number`);
    }
    return value;
  }
  if (column.kind === "boolean") {
    const lowered = cell.toLowerCase();
    if (TRUE_WORDS.has(lowered)) return true;
    if (FALSE_WORDS.has(lowered)) return false;
    throw new Error(`column ${column.name}: "${cell}" is not boolean`);
  }
  if (column.categories && !column.categories.includes(cell)) {
    throw new Error(
      `column ${column.name}: "${cell}" is not one of ` +
      column.categories.join(", "),
    );
  }
  return cell;
}
