import { readFileSync } from "node:fs";
import { RUN_COLUMNS } from "../src/csv.js";

export function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

export function fixturePath(name: string): string {
  return new URL(`./fixtures/${name}`, import.meta.url).pathname;
}

const BASE: Record<string, string> = {
  topology: "nsfnet",
  slot_width_ghz: "12.5",
  load_erlang_per_node: "20.0",
  dist: "uniform",
  dist_param1: "1.0",
  dist_param2: "100.0",
  guard_ghz: "10.0",
  link_bandwidth_ghz: "4000.0",
  total_requests: "4000",
  seed: "0",
  arrived_measured: "100",
  blocked: "5",
  bp: "0.05",
  bbp: "0.06",
  spectrum_efficiency: "0.9",
  sim_seconds_modeled: "1000.0",
  wall_ms: "3",
  status: "ok",
};

export const RUN_HEADER = RUN_COLUMNS.join(",");

/** One per-seed CSV line with selected columns overridden. */
export function runLine(over: Record<string, string> = {}): string {
  return RUN_COLUMNS.map((c) => over[c] ?? BASE[c]!).join(",");
}

export function runCsv(...overrides: Record<string, string>[]): string {
  return [RUN_HEADER, ...overrides.map(runLine)].join("\n") + "\n";
}
