/**
 * SVG rendering of failure-rate curves: one bold solid line per code for
 * the full-codeword decoder and one dotted line for the multiple-subset
 * decoder, y on a log scale.
 *
 * Zero failure rates cannot be placed on a log axis and are skipped;
 * confidence whiskers are optional.
 */

import { groupByCode, SweepRow } from "./csv.js";

export interface PlotSpec {
  width?: number;
  height?: number;
  showCi?: boolean;
  title?: string;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const MARGIN = { top: 40, right: 150, bottom: 48, left: 64 };

class LinearScale {
  constructor(
    private d0: number,
    private d1: number,
    private r0: number,
    private r1: number,
  ) {}
  map(x: number): number {
    const t = (x - this.d0) / (this.d1 - this.d0 || 1);
    return this.r0 + t * (this.r1 - this.r0);
  }
}

function fmt(x: number): string {
  return Number(x.toFixed(2)).toString();
}

export class PlotError extends Error {}

/** Build the SVG document for a set of sweep rows. */
export function renderFerSvg(rows: SweepRow[], spec: PlotSpec = {}): string {
  const width = spec.width ?? 640;
  const height = spec.height ?? 440;
  const groups = groupByCode(rows);
  if (groups.size === 0) {
    throw new PlotError("no rows to plot");
  }

  const fers = rows
    .flatMap((r) => [r.fer_fc, r.fer_msc, r.fer_fc_lo, r.fer_msc_lo])
    .filter((v) => v > 0);
  if (fers.length === 0) {
    throw new PlotError("all failure rates are zero; nothing to place on a log axis");
  }
  const yMinExp = Math.floor(Math.log10(Math.min(...fers)));
  const yMaxExp = 0;
  const pValues = rows.map((r) => r.p);
  const x = new LinearScale(
    Math.min(...pValues),
    Math.max(...pValues),
    MARGIN.left,
    width - MARGIN.right,
  );
  const y = new LinearScale(yMinExp, yMaxExp, height - MARGIN.bottom, MARGIN.top);
  const yOf = (fer: number) => y.map(Math.log10(fer));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  );
  if (spec.title) {
    parts.push(
      `<text x="${width / 2}" y="22" text-anchor="middle" font-size="15" font-family="sans-serif">${spec.title}</text>`,
    );
  }

  // Axes and grid.
  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = height - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
  );
  for (let e = yMinExp; e <= yMaxExp; e++) {
    const yy = y.map(e);
    parts.push(
      `<line x1="${x0}" y1="${yy}" x2="${x1}" y2="${yy}" stroke="#ddd" stroke-width="0.5"/>`,
      `<text x="${x0 - 8}" y="${yy + 4}" text-anchor="end" font-size="11" font-family="sans-serif">1e${e}</text>`,
    );
  }
  const pTicks = [...new Set(pValues)].sort((a, b) => a - b);
  for (const p of pTicks) {
    const xx = x.map(p);
    parts.push(
      `<line x1="${xx}" y1="${y0}" x2="${xx}" y2="${y0 + 4}" stroke="black"/>`,
      `<text x="${xx}" y="${y0 + 18}" text-anchor="middle" font-size="11" font-family="sans-serif">${fmt(p)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${height - 10}" text-anchor="middle" font-size="13" font-family="sans-serif">transition probability p</text>`,
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" font-family="sans-serif" transform="rotate(-90 16 ${(y0 + y1) / 2})">failure rate</text>`,
  );

  // Curves.
  let codeIdx = 0;
  let legendY = MARGIN.top;
  for (const [code, list] of groups) {
    const color = PALETTE[codeIdx % PALETTE.length];
    codeIdx += 1;
    for (const kind of ["fc", "msc"] as const) {
      const pts = list
        .map((r) => ({ p: r.p, fer: kind === "fc" ? r.fer_fc : r.fer_msc }))
        .filter((d) => d.fer > 0);
      if (pts.length === 0) continue;
      const d = pts
        .map((d2, i) => `${i === 0 ? "M" : "L"}${x.map(d2.p).toFixed(1)},${yOf(d2.fer).toFixed(1)}`)
        .join(" ");
      const style =
        kind === "fc"
          ? `stroke="${color}" stroke-width="2.5" fill="none"`
          : `stroke="${color}" stroke-width="1.5" stroke-dasharray="2 4" fill="none"`;
      parts.push(`<path class="curve-${kind}" d="${d}" ${style}/>`);
      for (const d2 of pts) {
        parts.push(
          `<circle cx="${x.map(d2.p).toFixed(1)}" cy="${yOf(d2.fer).toFixed(1)}" r="2.5" fill="${color}"/>`,
        );
      }
      if (spec.showCi) {
        for (const r of list) {
          const lo = kind === "fc" ? r.fer_fc_lo : r.fer_msc_lo;
          const hi = kind === "fc" ? r.fer_fc_hi : r.fer_msc_hi;
          if (lo <= 0 || hi <= 0) continue;
          const xx = x.map(r.p).toFixed(1);
          parts.push(
            `<line class="ci" x1="${xx}" y1="${yOf(lo).toFixed(1)}" x2="${xx}" y2="${yOf(hi).toFixed(1)}" stroke="${color}" stroke-width="1" opacity="0.6"/>`,
          );
        }
      }
      const label = `${code} ${kind.toUpperCase()}`;
      const lx = width - MARGIN.right + 12;
      parts.push(
        kind === "fc"
          ? `<line x1="${lx}" y1="${legendY}" x2="${lx + 26}" y2="${legendY}" stroke="${color}" stroke-width="2.5"/>`
          : `<line x1="${lx}" y1="${legendY}" x2="${lx + 26}" y2="${legendY}" stroke="${color}" stroke-width="1.5" stroke-dasharray="2 4"/>`,
        `<text x="${lx + 32}" y="${legendY + 4}" font-size="12" font-family="sans-serif">${label}</text>`,
      );
      legendY += 20;
    }
  }
  parts.push("</svg>");
  return parts.join("\n");
}
