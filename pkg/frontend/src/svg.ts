/** Deterministic SVG assembly: fixed canvas, nice linear ticks, no state. */

export const WIDTH = 800;
export const HEIGHT = 500;
export const MARGIN = { left: 72, right: 24, top: 44, bottom: 56 } as const;

export const PLOT = {
  x0: MARGIN.left,
  x1: WIDTH - MARGIN.right,
  y0: HEIGHT - MARGIN.bottom,
  y1: MARGIN.top,
} as const;

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Fixed-precision coordinate so output is byte-stable. */
export function coord(v: number): string {
  return v.toFixed(2);
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  return Number(v.toPrecision(6)).toString();
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): Scale {
  let lo = d0;
  let hi = d1;
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const f = (v: number): number => r0 + ((v - lo) / (hi - lo)) * (r1 - r0);
  const s = f as Scale;
  s.domain = [lo, hi];
  return s;
}

/** Round-number tick positions covering [lo, hi] with about n steps. */
export function ticks(lo: number, hi: number, n = 5): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const raw = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
  const out: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    // snap accumulated float error back onto the grid
    out.push(Number((Math.round(t / step) * step).toPrecision(12)));
  }
  return out;
}

export function axes(
  xs: Scale,
  ys: Scale,
  opts: {
    title: string;
    xLabel: string;
    yLabel: string;
    /** One label per integer band center; replaces numeric x ticks. */
    xCategorical?: readonly string[];
  },
): string {
  const parts: string[] = [];
  parts.push(
    `<line class="axis" x1="${coord(PLOT.x0)}" y1="${coord(PLOT.y0)}" ` +
      `x2="${coord(PLOT.x1)}" y2="${coord(PLOT.y0)}" stroke="#333"/>`,
    `<line class="axis" x1="${coord(PLOT.x0)}" y1="${coord(PLOT.y0)}" ` +
      `x2="${coord(PLOT.x0)}" y2="${coord(PLOT.y1)}" stroke="#333"/>`,
  );
  if (opts.xCategorical !== undefined) {
    const labels = opts.xCategorical;
    const every = Math.max(1, Math.ceil(labels.length / 20));
    labels.forEach((label, i) => {
      if (i % every !== 0) return;
      const x = coord(xs(i));
      parts.push(
        `<line class="tick" x1="${x}" y1="${coord(PLOT.y0)}" x2="${x}" ` +
          `y2="${coord(PLOT.y0 + 5)}" stroke="#333"/>`,
        `<text class="tick-label" x="${x}" y="${coord(PLOT.y0 + 20)}" ` +
          `text-anchor="middle" font-size="12">${esc(label)}</text>`,
      );
    });
  } else {
    for (const t of ticks(xs.domain[0], xs.domain[1])) {
      const x = coord(xs(t));
      parts.push(
        `<line class="tick" x1="${x}" y1="${coord(PLOT.y0)}" x2="${x}" ` +
          `y2="${coord(PLOT.y0 + 5)}" stroke="#333"/>`,
        `<text class="tick-label" x="${x}" y="${coord(PLOT.y0 + 20)}" ` +
          `text-anchor="middle" font-size="12">${esc(fmtTick(t))}</text>`,
      );
    }
  }
  for (const t of ticks(ys.domain[0], ys.domain[1])) {
    const y = coord(ys(t));
    parts.push(
      `<line class="tick" x1="${coord(PLOT.x0 - 5)}" y1="${y}" ` +
        `x2="${coord(PLOT.x0)}" y2="${y}" stroke="#333"/>`,
      `<text class="tick-label" x="${coord(PLOT.x0 - 9)}" y="${y}" ` +
        `text-anchor="end" dominant-baseline="middle" font-size="12">` +
        `${esc(fmtTick(t))}</text>`,
    );
  }
  const cx = (PLOT.x0 + PLOT.x1) / 2;
  const cy = (PLOT.y0 + PLOT.y1) / 2;
  parts.push(
    `<text class="title" x="${coord(cx)}" y="26" text-anchor="middle" ` +
      `font-size="16" font-weight="bold">${esc(opts.title)}</text>`,
    `<text class="x-label" x="${coord(cx)}" y="${coord(HEIGHT - 14)}" ` +
      `text-anchor="middle" font-size="13">${esc(opts.xLabel)}</text>`,
    `<text class="y-label" x="20" y="${coord(cy)}" text-anchor="middle" ` +
      `font-size="13" transform="rotate(-90 20 ${coord(cy)})">` +
      `${esc(opts.yLabel)}</text>`,
  );
  return parts.join("\n");
}

export function legend(
  entries: readonly { label: string; color: string }[],
): string {
  const parts: string[] = [];
  let y = PLOT.y1 + 8;
  for (const { label, color } of entries) {
    const x = PLOT.x1 - 190;
    parts.push(
      `<rect class="legend-swatch" x="${coord(x)}" y="${coord(y)}" ` +
        `width="14" height="14" fill="${color}"/>`,
      `<text class="legend-label" x="${coord(x + 20)}" y="${coord(y + 11)}" ` +
        `font-size="12">${esc(label)}</text>`,
    );
    y += 20;
  }
  return parts.join("\n");
}

export function svgDoc(body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" ` +
    `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
    `font-family="sans-serif">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n` +
    body +
    `\n</svg>\n`
  );
}
