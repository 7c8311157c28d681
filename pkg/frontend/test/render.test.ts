import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync, statSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";
import { MissingInput, SchemaMismatch } from "../src/errors.js";
import { render, renderToString } from "../src/render.js";
import { readTable } from "../src/schemas.js";
import { PLOT } from "../src/svg.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const FIX = join(HERE, "fixtures");
const OUT = mkdtempSync(join(tmpdir(), "figs-"));
const CLI = join(HERE, "..", "dist", "cli.js");

const BLOCKS = join(FIX, "blocks_211.csv");
const RANKS = join(FIX, "ranks_sweep_k2.csv");
const DISC = join(FIX, "discrepancy_1009.csv");
const SCATTER = join(FIX, "scatter_17.csv");
const SCATTER_EMPTY = join(FIX, "scatter_empty.csv");

function csvDataRows(path: string): number {
  return readFileSync(path, "utf-8").trim().split("\n").length - 1;
}

function occurrences(hay: string, needle: string): number {
  return hay.split(needle).length - 1;
}

describe("figure kinds from the producer's CSVs", () => {
  it("renders histogram, trend, and discrepancy figures", () => {
    const cases = [
      ["histogram", BLOCKS],
      ["trend", RANKS],
      ["discrepancy", DISC],
    ] as const;
    for (const [kind, input] of cases) {
      const output = join(OUT, `${kind}.svg`);
      render({ kind, inputCsv: input, outputImage: output });
      expect(existsSync(output)).toBe(true);
      expect(statSync(output).size).toBeGreaterThan(0);
      const text = readFileSync(output, "utf-8");
      expect(text.startsWith("<svg")).toBe(true);
      expect(occurrences(text, 'class="axis"')).toBe(2);
    }
  });

  it("draws exactly one empirical bar per CSV bin", () => {
    const svg = renderToString({
      kind: "histogram",
      inputCsv: BLOCKS,
      outputImage: "",
    });
    const bins = csvDataRows(BLOCKS);
    expect(occurrences(svg, 'class="bar-empirical"')).toBe(bins);
  });

  it("overlays one Poisson reference bar per bin plus a legend", () => {
    const svg = renderToString({
      kind: "histogram",
      inputCsv: BLOCKS,
      outputImage: "",
    });
    expect(occurrences(svg, 'class="bar-reference"')).toBe(csvDataRows(BLOCKS));
    expect(svg).toContain("Poisson(1) reference");
  });

  it("renders one scatter dot per CSV row inside the plot area", () => {
    const svg = renderToString({
      kind: "scatter",
      inputCsv: SCATTER,
      outputImage: "",
    });
    expect(occurrences(svg, 'class="pt"')).toBe(csvDataRows(SCATTER));
    for (const m of svg.matchAll(/cx="([0-9.]+)"/g)) {
      const cx = Number(m[1]);
      expect(cx).toBeGreaterThanOrEqual(PLOT.x0 - 0.01);
      expect(cx).toBeLessThanOrEqual(PLOT.x1 + 0.01);
    }
    for (const m of svg.matchAll(/cy="([0-9.]+)"/g)) {
      const cy = Number(m[1]);
      expect(cy).toBeGreaterThanOrEqual(PLOT.y1 - 0.01);
      expect(cy).toBeLessThanOrEqual(PLOT.y0 + 0.01);
    }
  });

  it("renders an empty scatter CSV as blank axes, successfully", () => {
    const output = join(OUT, "empty.svg");
    render({ kind: "scatter", inputCsv: SCATTER_EMPTY, outputImage: output });
    const svg = readFileSync(output, "utf-8");
    expect(occurrences(svg, 'class="pt"')).toBe(0);
    expect(occurrences(svg, 'class="axis"')).toBe(2);
  });

  it("draws the trend as a line over every prime plus a unit reference", () => {
    const svg = renderToString({
      kind: "trend",
      inputCsv: RANKS,
      outputImage: "",
    });
    const rows = csvDataRows(RANKS);
    expect(occurrences(svg, 'class="trend-pt"')).toBe(rows);
    expect(occurrences(svg, 'class="trend-line"')).toBe(1);
    expect(occurrences(svg, 'class="ref-line"')).toBe(1);
  });

  it("draws three deviation bars per discrepancy row", () => {
    const svg = renderToString({
      kind: "discrepancy",
      inputCsv: DISC,
      outputImage: "",
    });
    const rows = csvDataRows(DISC);
    for (const cls of ["bar-delta", "bar-d", "bar-ref"]) {
      expect(occurrences(svg, `class="${cls}"`)).toBe(rows);
    }
    expect(svg).toContain("1 / sqrt(p)");
  });

  it("is deterministic for a fixed input", () => {
    const spec = {
      kind: "histogram",
      inputCsv: BLOCKS,
      outputImage: "",
    } as const;
    expect(renderToString(spec)).toBe(renderToString(spec));
  });

  it("honors a custom title", () => {
    const svg = renderToString({
      kind: "trend",
      inputCsv: RANKS,
      outputImage: "",
      title: "pair density sweep",
    });
    expect(svg).toContain("pair density sweep");
  });
});

describe("input validation", () => {
  it("rejects a CSV whose header belongs to another kind", () => {
    expect(() =>
      renderToString({ kind: "histogram", inputCsv: RANKS, outputImage: "" }),
    ).toThrowError(SchemaMismatch);
  });

  it("rejects a missing input path", () => {
    expect(() =>
      renderToString({
        kind: "scatter",
        inputCsv: join(FIX, "no_such.csv"),
        outputImage: "",
      }),
    ).toThrowError(MissingInput);
  });

  it("rejects non-numeric cells", () => {
    const bad = join(OUT, "bad.csv");
    writeFileSync(bad, "x,y\n1,abc\n");
    expect(() => readTable("scatter", bad)).toThrowError(SchemaMismatch);
  });

  it("rejects ragged rows", () => {
    const bad = join(OUT, "ragged.csv");
    writeFileSync(bad, "x,y\n1,2,3\n");
    expect(() => readTable("scatter", bad)).toThrowError(SchemaMismatch);
  });
});

describe("command-line entry point", () => {
  const run = (...args: string[]) =>
    spawnSync(process.execPath, [CLI, ...args], { encoding: "utf-8" });

  it("renders via the CLI with exit code 0", () => {
    const output = join(OUT, "cli_hist.svg");
    const res = run("render", "histogram", BLOCKS, output);
    expect(res.status).toBe(0);
    expect(res.stdout).toContain(`wrote ${output}`);
    expect(existsSync(output)).toBe(true);
  });

  it("accepts --title", () => {
    const output = join(OUT, "cli_titled.svg");
    const res = run("render", "trend", RANKS, output, "--title", "sweep");
    expect(res.status).toBe(0);
    expect(readFileSync(output, "utf-8")).toContain("sweep");
  });

  it("exits 2 on an unknown kind", () => {
    const res = run("render", "surface", BLOCKS, join(OUT, "x.svg"));
    expect(res.status).toBe(2);
    expect(res.stderr).toContain("unknown kind");
  });

  it("exits 2 on a missing input", () => {
    const res = run("render", "scatter", join(FIX, "nope.csv"),
      join(OUT, "x.svg"));
    expect(res.status).toBe(2);
    expect(res.stderr).toContain("MissingInput");
  });

  it("exits 2 on a schema mismatch", () => {
    const res = run("render", "histogram", RANKS, join(OUT, "x.svg"));
    expect(res.status).toBe(2);
    expect(res.stderr).toContain("SchemaMismatch");
  });
});
