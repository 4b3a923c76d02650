import Papa from "papaparse";
import { AggRow, FigureError, RunRow } from "./types.js";

export const RUN_COLUMNS = [
  "topology",
  "slot_width_ghz",
  "load_erlang_per_node",
  "dist",
  "dist_param1",
  "dist_param2",
  "guard_ghz",
  "link_bandwidth_ghz",
  "total_requests",
  "seed",
  "arrived_measured",
  "blocked",
  "bp",
  "bbp",
  "spectrum_efficiency",
  "sim_seconds_modeled",
  "wall_ms",
  "status",
] as const;

export const AGG_COLUMNS = [
  "topology",
  "slot_width_ghz",
  "load_erlang_per_node",
  "dist",
  "dist_param1",
  "dist_param2",
  "guard_ghz",
  "link_bandwidth_ghz",
  "total_requests",
  "n_seeds",
  "bp_mean",
  "bp_stderr",
  "bbp_mean",
  "bbp_stderr",
  "spectrum_efficiency_mean",
  "spectrum_efficiency_stderr",
] as const;

/** The grouping key shared by both schemas. */
export const IDENTITY_COLUMNS = RUN_COLUMNS.slice(0, 9);

export type ParsedCsv =
  | { kind: "runs"; rows: RunRow[] }
  | { kind: "aggregate"; rows: AggRow[] };

function parseRecords(text: string): Record<string, string>[] {
  const res = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: "greedy",
  });
  const fatal = res.errors.filter((e) => e.code !== "UndetectableDelimiter");
  if (res.data.length === 0 && fatal.length > 0) {
    throw new FigureError(`unparseable CSV: ${fatal[0]!.message}`);
  }
  return res.data;
}

function checkColumns(have: string[], want: readonly string[]): void {
  const missing = want.filter((c) => !have.includes(c));
  if (missing.length > 0) {
    throw new FigureError(`missing column(s): ${missing.join(", ")}`);
  }
}

function num(record: Record<string, string>, col: string): number {
  const raw = (record[col] ?? "").trim();
  const v = Number(raw);
  if (raw === "" || !Number.isFinite(v)) {
    throw new FigureError(`non-numeric value ${JSON.stringify(raw)} in column ${col}`);
  }
  return v;
}

function numOrNull(record: Record<string, string>, col: string): number | null {
  const raw = (record[col] ?? "").trim();
  if (raw === "") return null;
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new FigureError(`non-numeric value ${JSON.stringify(raw)} in column ${col}`);
  }
  return v;
}

function identityOf(record: Record<string, string>): string[] {
  return IDENTITY_COLUMNS.map((c) => record[c] ?? "");
}

/**
 * Parse a sweep CSV in either the per-seed or the seed-aggregated schema,
 * deciding by header. Empty metric cells become null (metric undefined for
 * that run, e.g. nothing arrived inside the measured window).
 */
export function parseCsv(text: string): ParsedCsv {
  const records = parseRecords(text);
  if (records.length === 0) {
    throw new FigureError("CSV has no data rows");
  }
  const have = Object.keys(records[0]!);
  if (have.includes("seed")) {
    checkColumns(have, RUN_COLUMNS);
    const rows = records.map(
      (r): RunRow => ({
        topology: r["topology"] ?? "",
        slot_width_ghz: num(r, "slot_width_ghz"),
        load_erlang_per_node: num(r, "load_erlang_per_node"),
        dist: r["dist"] ?? "",
        dist_param1: num(r, "dist_param1"),
        dist_param2: numOrNull(r, "dist_param2"),
        guard_ghz: num(r, "guard_ghz"),
        link_bandwidth_ghz: num(r, "link_bandwidth_ghz"),
        total_requests: num(r, "total_requests"),
        seed: num(r, "seed"),
        arrived_measured: num(r, "arrived_measured"),
        blocked: num(r, "blocked"),
        bp: numOrNull(r, "bp"),
        bbp: numOrNull(r, "bbp"),
        spectrum_efficiency: numOrNull(r, "spectrum_efficiency"),
        sim_seconds_modeled: num(r, "sim_seconds_modeled"),
        wall_ms: num(r, "wall_ms"),
        status: r["status"] ?? "",
        identity: identityOf(r),
      }),
    );
    return { kind: "runs", rows };
  }
  if (have.includes("n_seeds")) {
    checkColumns(have, AGG_COLUMNS);
    const rows = records.map(
      (r): AggRow => ({
        topology: r["topology"] ?? "",
        slot_width_ghz: num(r, "slot_width_ghz"),
        load_erlang_per_node: num(r, "load_erlang_per_node"),
        dist: r["dist"] ?? "",
        dist_param1: num(r, "dist_param1"),
        dist_param2: numOrNull(r, "dist_param2"),
        guard_ghz: num(r, "guard_ghz"),
        link_bandwidth_ghz: num(r, "link_bandwidth_ghz"),
        total_requests: num(r, "total_requests"),
        n_seeds: num(r, "n_seeds"),
        bp_mean: numOrNull(r, "bp_mean"),
        bp_stderr: numOrNull(r, "bp_stderr"),
        bbp_mean: numOrNull(r, "bbp_mean"),
        bbp_stderr: numOrNull(r, "bbp_stderr"),
        spectrum_efficiency_mean: numOrNull(r, "spectrum_efficiency_mean"),
        spectrum_efficiency_stderr: numOrNull(r, "spectrum_efficiency_stderr"),
        identity: identityOf(r),
      }),
    );
    return { kind: "aggregate", rows };
  }
  checkColumns(have, RUN_COLUMNS);
  throw new FigureError("unrecognized CSV schema");
}
