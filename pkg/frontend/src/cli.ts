/**
 * Command-line front end.
 *
 *   keyrec-plots fer <csv...> --out figure.svg [--ci] [--title text]
 *   keyrec-plots skr-table <csv...> [--skr-points c1:0.275,c2:0.2]
 *
 * Exit codes: 0 ok, 1 data/processing failure, 2 usage.
 */

import * as fs from "node:fs";
import * as process from "node:process";

import { CsvError, parseSweepCsv, SweepRow } from "./csv.js";
import { PlotError, renderFerSvg } from "./fer_plot.js";
import { parseSkrPoints, renderSkrTable, TableError } from "./skr_table.js";

interface Args {
  command: string;
  inputs: string[];
  out?: string;
  skrPoints?: string;
  ci: boolean;
  title?: string;
}

function usage(): string {
  return [
    "usage: keyrec-plots fer <csv...> --out <svg> [--ci] [--title <text>]",
    "       keyrec-plots skr-table <csv...> [--skr-points code:p,code:p,...]",
  ].join("\n");
}

export function parseArgs(argv: string[]): Args {
  const [command, ...rest] = argv;
  if (command !== "fer" && command !== "skr-table") {
    throw new RangeError(usage());
  }
  const args: Args = { command, inputs: [], ci: false };
  for (let i = 0; i < rest.length; i++) {
    const a = rest[i];
    if (a === "--out") args.out = rest[++i];
    else if (a === "--skr-points") args.skrPoints = rest[++i];
    else if (a === "--ci") args.ci = true;
    else if (a === "--title") args.title = rest[++i];
    else if (a.startsWith("--")) throw new RangeError(`unknown flag ${a}\n${usage()}`);
    else args.inputs.push(a);
  }
  if (args.inputs.length === 0) {
    throw new RangeError(`at least one input CSV required\n${usage()}`);
  }
  if (args.command === "fer" && !args.out) {
    throw new RangeError(`fer requires --out\n${usage()}`);
  }
  return args;
}

function loadRows(paths: string[], warn: (m: string) => void): SweepRow[] {
  const rows: SweepRow[] = [];
  for (const path of paths) {
    const text = fs.readFileSync(path, "utf8");
    rows.push(...parseSweepCsv(text, path, warn));
  }
  return rows;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    console.error((e as Error).message);
    return 2;
  }
  try {
    const rows = loadRows(args.inputs, (m) => console.error(`warning: ${m}`));
    if (args.command === "fer") {
      const svg = renderFerSvg(rows, { showCi: args.ci, title: args.title });
      fs.writeFileSync(args.out!, svg);
      console.error(`wrote ${args.out}`);
    } else {
      const points = args.skrPoints ? parseSkrPoints(args.skrPoints) : undefined;
      console.log(renderSkrTable(rows, points));
    }
    return 0;
  } catch (e) {
    if (
      e instanceof CsvError ||
      e instanceof PlotError ||
      e instanceof TableError ||
      (e as NodeJS.ErrnoException).code === "ENOENT"
    ) {
      console.error(`error: ${(e as Error).message}`);
      return 1;
    }
    throw e;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
