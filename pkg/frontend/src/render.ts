import { writeFileSync } from "node:fs";
import { type FigureKind, readTable, type Table } from "./schemas.js";
import {
  axes,
  coord,
  legend,
  linScale,
  PLOT,
  svgDoc,
} from "./svg.js";

export interface FigureSpec {
  kind: FigureKind;
  inputCsv: string;
  outputImage: string;
  title?: string;
}

const DEFAULT_TITLES: Record<FigureKind, string> = {
  scatter: "Valuation-one points",
  histogram: "Block counts vs Poisson(1) reference",
  trend: "m_{k,2} / p^2 versus p",
  discrepancy: "Deviation lower bounds by prime",
};

const BLUE = "#4878a8";
const ORANGE = "#d08050";
const GREEN = "#7aa35c";

function renderScatter(table: Table, title: string): string {
  const xsMax = table.rows.length > 0
    ? Math.max(...table.rows.map((r) => r[0]!))
    : 1;
  const ysMax = table.rows.length > 0
    ? Math.max(...table.rows.map((r) => r[1]!))
    : 1;
  const xs = linScale(0, xsMax, PLOT.x0, PLOT.x1);
  const ys = linScale(0, ysMax, PLOT.y0, PLOT.y1);
  const body: string[] = [
    axes(xs, ys, { title, xLabel: "x", yLabel: "y" }),
  ];
  for (const row of table.rows) {
    body.push(
      `<circle class="pt" cx="${coord(xs(row[0]!))}" ` +
        `cy="${coord(ys(row[1]!))}" r="1.50" fill="${BLUE}" ` +
        `fill-opacity="0.7"/>`,
    );
  }
  return body.join("\n");
}

function renderHistogram(table: Table, title: string): string {
  const n = table.rows.length;
  const top = n > 0
    ? Math.max(...table.rows.map((r) => Math.max(r[1]!, r[2]!)))
    : 1;
  const xs = linScale(-0.5, Math.max(n - 0.5, 0.5), PLOT.x0, PLOT.x1);
  const ys = linScale(0, top * 1.05, PLOT.y0, PLOT.y1);
  const labels = table.rows.map((r) => String(r[0]!));
  const body: string[] = [
    axes(xs, ys, {
      title,
      xLabel: "points per block",
      yLabel: "number of blocks",
      xCategorical: labels,
    }),
    legend([
      { label: "observed blocks", color: BLUE },
      { label: "Poisson(1) reference", color: ORANGE },
    ]),
  ];
  const band = n > 0 ? (PLOT.x1 - PLOT.x0) / n : PLOT.x1 - PLOT.x0;
  const barW = band * 0.38;
  table.rows.forEach((row, i) => {
    const center = xs(i);
    const hObs = ys(row[1]!);
    const hRef = ys(row[2]!);
    body.push(
      `<rect class="bar-empirical" x="${coord(center - barW)}" ` +
        `y="${coord(hObs)}" width="${coord(barW)}" ` +
        `height="${coord(PLOT.y0 - hObs)}" fill="${BLUE}"/>`,
      `<rect class="bar-reference" x="${coord(center)}" ` +
        `y="${coord(hRef)}" width="${coord(barW)}" ` +
        `height="${coord(PLOT.y0 - hRef)}" fill="${ORANGE}"/>`,
    );
  });
  return body.join("\n");
}

function renderTrend(table: Table, title: string): string {
  const rows = [...table.rows].sort((a, b) => a[0]! - b[0]!);
  const ps = rows.map((r) => r[0]!);
  const ratios = rows.map((r) => r[5]!);
  const pLo = ps.length > 0 ? Math.min(...ps) : 0;
  const pHi = ps.length > 0 ? Math.max(...ps) : 1;
  const pad = Math.max((pHi - pLo) * 0.05, 1);
  const yTop = Math.max(1, ...ratios) * 1.15;
  const xs = linScale(pLo - pad, pHi + pad, PLOT.x0, PLOT.x1);
  const ys = linScale(0, yTop, PLOT.y0, PLOT.y1);
  const body: string[] = [
    axes(xs, ys, { title, xLabel: "p", yLabel: "m_{k,2} / p^2" }),
  ];
  const yOne = coord(ys(1));
  body.push(
    `<line class="ref-line" x1="${coord(PLOT.x0)}" y1="${yOne}" ` +
      `x2="${coord(PLOT.x1)}" y2="${yOne}" stroke="#888" ` +
      `stroke-dasharray="6 4"/>`,
  );
  if (rows.length > 0) {
    const pts = rows
      .map((r) => `${coord(xs(r[0]!))},${coord(ys(r[5]!))}`)
      .join(" ");
    body.push(
      `<polyline class="trend-line" points="${pts}" fill="none" ` +
        `stroke="${BLUE}" stroke-width="2"/>`,
    );
    rows.forEach((r) => {
      body.push(
        `<circle class="trend-pt" cx="${coord(xs(r[0]!))}" ` +
          `cy="${coord(ys(r[5]!))}" r="4.00" fill="${BLUE}"/>`,
      );
    });
  }
  return body.join("\n");
}

function renderDiscrepancy(table: Table, title: string): string {
  const rows = [...table.rows].sort((a, b) => a[0]! - b[0]!);
  const n = rows.length;
  const top = n > 0
    ? Math.max(...rows.map((r) => Math.max(r[2]!, r[3]!, r[4]!)))
    : 1;
  const xs = linScale(-0.5, Math.max(n - 0.5, 0.5), PLOT.x0, PLOT.x1);
  const ys = linScale(0, top * 1.15, PLOT.y0, PLOT.y1);
  const body: string[] = [
    axes(xs, ys, {
      title,
      xLabel: "p",
      yLabel: "lower bound",
      xCategorical: rows.map((r) => String(r[0]!)),
    }),
    legend([
      { label: "delta lower bound", color: BLUE },
      { label: "D lower bound", color: ORANGE },
      { label: "1 / sqrt(p)", color: GREEN },
    ]),
  ];
  const band = n > 0 ? (PLOT.x1 - PLOT.x0) / n : PLOT.x1 - PLOT.x0;
  const barW = band * 0.22;
  const series: readonly [number, string, string][] = [
    [2, "bar-delta", BLUE],
    [3, "bar-d", ORANGE],
    [4, "bar-ref", GREEN],
  ];
  rows.forEach((row, i) => {
    const center = xs(i);
    series.forEach(([col, cls, color], s) => {
      const h = ys(row[col]!);
      const x = center + (s - 1.5) * barW;
      body.push(
        `<rect class="${cls}" x="${coord(x)}" y="${coord(h)}" ` +
          `width="${coord(barW)}" height="${coord(PLOT.y0 - h)}" ` +
          `fill="${color}"/>`,
      );
    });
  });
  return body.join("\n");
}

/** Render one figure to an SVG string; deterministic for a fixed input. */
export function renderToString(spec: FigureSpec): string {
  const table = readTable(spec.kind, spec.inputCsv);
  const title = spec.title ?? DEFAULT_TITLES[spec.kind];
  let body: string;
  switch (spec.kind) {
    case "scatter":
      body = renderScatter(table, title);
      break;
    case "histogram":
      body = renderHistogram(table, title);
      break;
    case "trend":
      body = renderTrend(table, title);
      break;
    case "discrepancy":
      body = renderDiscrepancy(table, title);
      break;
  }
  return svgDoc(body);
}

/** Render one figure to its output file. */
export function render(spec: FigureSpec): void {
  writeFileSync(spec.outputImage, renderToString(spec), "utf-8");
}
