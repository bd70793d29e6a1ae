/**
 * Parsing and validation of simulator sweep CSVs.
 *
 * The producer writes a fixed header; every consumer here checks for the
 * columns it needs and reports precise locations for anything malformed.
 */

export const REQUIRED_COLUMNS = [
  "code",
  "p",
  "trials",
  "fc_failures",
  "msc_failures",
  "undetected",
  "fer_fc",
  "fer_fc_lo",
  "fer_fc_hi",
  "fer_msc",
  "fer_msc_lo",
  "fer_msc_hi",
  "skr_fc",
  "skr_msc",
  "mean_iters",
] as const;

export interface SweepRow {
  code: string;
  p: number;
  trials: number;
  fer_fc: number;
  fer_fc_lo: number;
  fer_fc_hi: number;
  fer_msc: number;
  fer_msc_lo: number;
  fer_msc_hi: number;
  skr_fc: number;
  skr_msc: number;
}

export class CsvError extends Error {}

const NUMERIC_FIELDS = [
  "p",
  "trials",
  "fer_fc",
  "fer_fc_lo",
  "fer_fc_hi",
  "fer_msc",
  "fer_msc_lo",
  "fer_msc_hi",
  "skr_fc",
  "skr_msc",
] as const;

/** Parse one sweep CSV; duplicate (code, p) rows keep the last occurrence. */
export function parseSweepCsv(
  text: string,
  source = "<csv>",
  warn: (msg: string) => void = (m) => console.warn(m),
): SweepRow[] {
  const lines = text
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${source}: file is empty`);
  }
  const header = lines[0].split(",");
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new CsvError(`${source}: missing columns: ${missing.join(", ")}`);
  }
  if (lines.length === 1) {
    throw new CsvError(`${source}: no data rows`);
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const byKey = new Map<string, SweepRow>();
  for (let ln = 1; ln < lines.length; ln++) {
    const cells = lines[ln].split(",");
    if (cells.length !== header.length) {
      throw new CsvError(
        `${source}: line ${ln + 1} has ${cells.length} cells, expected ${header.length}`,
      );
    }
    const get = (name: string) => cells[index.get(name)!];
    const row: Record<string, number | string> = { code: get("code") };
    for (const field of NUMERIC_FIELDS) {
      const raw = get(field);
      const value = Number(raw);
      if (raw === "" || !Number.isFinite(value)) {
        throw new CsvError(
          `${source}: line ${ln + 1}, column '${field}': non-numeric value '${raw}'`,
        );
      }
      row[field] = value;
    }
    const key = `${row.code}@${row.p}`;
    if (byKey.has(key)) {
      warn(`${source}: duplicate row for ${key}; keeping the later one`);
    }
    byKey.set(key, row as unknown as SweepRow);
  }
  return [...byKey.values()];
}

/** Group rows by code name, preserving insertion order. */
export function groupByCode(rows: SweepRow[]): Map<string, SweepRow[]> {
  const groups = new Map<string, SweepRow[]>();
  for (const row of rows) {
    const list = groups.get(row.code) ?? [];
    list.push(row);
    groups.set(row.code, list);
  }
  for (const list of groups.values()) {
    list.sort((a, b) => a.p - b.p);
  }
  return groups;
}
