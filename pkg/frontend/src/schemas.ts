import { existsSync, readFileSync } from "node:fs";
import Papa from "papaparse";
import { MissingInput, SchemaMismatch } from "./errors.js";

export type FigureKind = "scatter" | "histogram" | "trend" | "discrepancy";

export const KINDS: readonly FigureKind[] = [
  "scatter",
  "histogram",
  "trend",
  "discrepancy",
];

/** Exact (ordered) CSV header each kind consumes, as the producer emits it. */
export const EXPECTED_HEADERS: Record<FigureKind, readonly string[]> = {
  scatter: ["x", "y"],
  histogram: ["x_value", "block_count", "poisson_expected"],
  trend: ["p", "k", "m", "m_k1", "m_k2", "m_k2_over_p2"],
  discrepancy: ["p", "side", "delta_lower", "d_lower", "inv_sqrt_p"],
};

export interface Table {
  headers: string[];
  rows: number[][];
}

/** Read and validate one CSV for the given kind; all cells become numbers. */
export function readTable(kind: FigureKind, csvPath: string): Table {
  if (!existsSync(csvPath)) {
    throw new MissingInput(csvPath);
  }
  const text = readFileSync(csvPath, "utf-8");
  const parsed = Papa.parse<string[]>(text.trim(), {
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new SchemaMismatch(`${csvPath}: ${first.message}`);
  }
  const lines = parsed.data;
  const expected = EXPECTED_HEADERS[kind];
  const headers = lines.length > 0 ? lines[0]! : [];
  if (
    headers.length !== expected.length ||
    expected.some((h, i) => headers[i] !== h)
  ) {
    throw new SchemaMismatch(
      `${csvPath}: header [${headers.join(",")}] does not match the ` +
        `${kind} schema [${expected.join(",")}]`,
    );
  }
  const rows: number[][] = [];
  for (let r = 1; r < lines.length; r += 1) {
    const cells = lines[r]!;
    if (cells.length !== expected.length) {
      throw new SchemaMismatch(
        `${csvPath}: row ${r} has ${cells.length} cells, expected ` +
          `${expected.length}`,
      );
    }
    const row = cells.map((c) => Number(c));
    const bad = row.findIndex((v) => Number.isNaN(v));
    if (bad >= 0) {
      throw new SchemaMismatch(
        `${csvPath}: row ${r} column ${expected[bad]} is not numeric: ` +
          `${cells[bad]}`,
      );
    }
    rows.push(row);
  }
  return { headers: [...expected], rows };
}
