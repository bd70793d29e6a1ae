/**
 * Plain-text secret-key-rate summary: one row per (code, p) with the
 * full-codeword and multiple-subset rates side by side.
 */

import { SweepRow } from "./csv.js";

export class TableError extends Error {}

export interface SkrPoint {
  code: string;
  p: number;
}

/** Parse a filter like "c1:0.275,c2:0.2" into requested (code, p) pairs. */
export function parseSkrPoints(arg: string): SkrPoint[] {
  const points: SkrPoint[] = [];
  for (const piece of arg.split(",")) {
    const [code, pRaw] = piece.split(":");
    const p = Number(pRaw);
    if (!code || !pRaw || !Number.isFinite(p)) {
      throw new TableError(`bad --skr-points entry '${piece}' (expected code:p)`);
    }
    points.push({ code, p });
  }
  return points;
}

const P_TOLERANCE = 1e-9;

/** Render the table; when points are given, missing rows are an error. */
export function renderSkrTable(rows: SweepRow[], points?: SkrPoint[]): string {
  let selected: SweepRow[];
  if (points && points.length > 0) {
    selected = [];
    const missing: string[] = [];
    for (const pt of points) {
      const row = rows.find(
        (r) => r.code === pt.code && Math.abs(r.p - pt.p) < P_TOLERANCE,
      );
      if (row === undefined) {
        missing.push(`${pt.code}:${pt.p}`);
      } else {
        selected.push(row);
      }
    }
    if (missing.length > 0) {
      throw new TableError(`no CSV rows for requested points: ${missing.join(", ")}`);
    }
  } else {
    selected = [...rows].sort((a, b) =>
      a.code === b.code ? a.p - b.p : a.code.localeCompare(b.code),
    );
  }
  const header = ["code".padEnd(8), "p".padStart(8), "fc_skr".padStart(10), "msc_skr".padStart(10)];
  const lines = [header.join("")];
  for (const r of selected) {
    lines.push(
      r.code.padEnd(8) +
        String(r.p).padStart(8) +
        r.skr_fc.toFixed(4).padStart(10) +
        r.skr_msc.toFixed(4).padStart(10),
    );
  }
  return lines.join("\n");
}
