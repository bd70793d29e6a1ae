import assert from "node:assert/strict";
import * as fs from "node:fs";
import * as path from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

import { parseSweepCsv } from "../src/csv.js";
import { PlotError, renderFerSvg } from "../src/fer_plot.js";

const FIXTURES = path.join(path.dirname(fileURLToPath(import.meta.url)), "../../test/fixtures");
const rows = parseSweepCsv(fs.readFileSync(path.join(FIXTURES, "fer_sweeps.csv"), "utf8"));

test("three-code sweep renders six styled curves with a log axis", () => {
  const svg = renderFerSvg(rows, { title: "failure rates" });
  assert.match(svg, /^<svg /);
  assert.equal((svg.match(/class="curve-fc"/g) ?? []).length, 3);
  assert.equal((svg.match(/class="curve-msc"/g) ?? []).length, 3);
  // Bold solid for the full-codeword curves, dotted for subset curves.
  assert.match(svg, /curve-fc[^>]*stroke-width="2\.5"/);
  assert.match(svg, /curve-msc[^>]*stroke-dasharray/);
  // Log-scale decade labels.
  assert.match(svg, />1e0</);
  assert.match(svg, />1e-2</);
  // Legend mentions every code and both decoders.
  for (const label of ["c1 FC", "c1 MSC", "c2 FC", "c3 MSC"]) {
    assert.ok(svg.includes(label), `legend label ${label}`);
  }
});

test("single-code sweep keeps the subset curve at or below the full curve", () => {
  const c1 = rows.filter((r) => r.code === "c1");
  const svg = renderFerSvg(c1);
  assert.equal((svg.match(/class="curve-fc"/g) ?? []).length, 1);
  // Extract path y-coordinates; larger SVG y means smaller failure rate,
  // so every MSC y must be >= the FC y at the shared x positions.
  const coords = (cls: string) => {
    const m = svg.match(new RegExp(`class="${cls}" d="([^"]+)"`));
    assert.ok(m, `path ${cls}`);
    return m![1]
      .split(" ")
      .map((seg) => seg.slice(1).split(",").map(Number) as [number, number]);
  };
  const fc = new Map(coords("curve-fc").map(([x, y]) => [x, y]));
  for (const [x, y] of coords("curve-msc")) {
    const yFc = fc.get(x);
    if (yFc !== undefined) {
      assert.ok(y >= yFc - 1e-9, `msc above fc at x=${x}`);
    }
  }
});

test("confidence whiskers appear only when requested", () => {
  assert.doesNotMatch(renderFerSvg(rows), /class="ci"/);
  assert.match(renderFerSvg(rows, { showCi: true }), /class="ci"/);
});

test("zero failure rates are skipped, not plotted", () => {
  const c3 = rows.filter((r) => r.code === "c3");
  const zeroPoints = c3.filter((r) => r.fer_fc === 0).length;
  assert.ok(zeroPoints > 0, "fixture should contain zero-FER points");
  const svg = renderFerSvg(c3);
  const fcPath = svg.match(/class="curve-fc" d="([^"]+)"/)![1];
  assert.equal(fcPath.split(" ").length, c3.length - zeroPoints);
});

test("all-zero input cannot be placed on a log axis", () => {
  const flat = rows.map((r) => ({ ...r, fer_fc: 0, fer_msc: 0, fer_fc_lo: 0, fer_msc_lo: 0 }));
  assert.throws(() => renderFerSvg(flat), PlotError);
});

test("empty row list is an error", () => {
  assert.throws(() => renderFerSvg([]), PlotError);
});
