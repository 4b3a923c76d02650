export type XAxis = "slot_width" | "b_max" | "b_avg";
export type YMetric = "bp" | "bbp" | "se";
export type SeriesKey = "topology" | "load" | "slot_width";
export type YScale = "log" | "linear";

export interface FigureSpec {
  xAxis: XAxis;
  yMetric: YMetric;
  seriesKey: SeriesKey;
  /** Defaults to "log" for bp/bbp and "linear" for se. */
  yScale?: YScale;
  input: string;
  output: string;
}

/** One per-seed simulation row from a sweep CSV. */
export interface RunRow {
  topology: string;
  slot_width_ghz: number;
  load_erlang_per_node: number;
  dist: string;
  dist_param1: number;
  dist_param2: number | null;
  guard_ghz: number;
  link_bandwidth_ghz: number;
  total_requests: number;
  seed: number;
  arrived_measured: number;
  blocked: number;
  bp: number | null;
  bbp: number | null;
  spectrum_efficiency: number | null;
  sim_seconds_modeled: number;
  wall_ms: number;
  status: string;
  /** Raw string values of the nine identity columns, for exact grouping. */
  identity: string[];
}

/** One seed-aggregated row (grouped over the nine identity columns). */
export interface AggRow {
  topology: string;
  slot_width_ghz: number;
  load_erlang_per_node: number;
  dist: string;
  dist_param1: number;
  dist_param2: number | null;
  guard_ghz: number;
  link_bandwidth_ghz: number;
  total_requests: number;
  n_seeds: number;
  bp_mean: number | null;
  bp_stderr: number | null;
  bbp_mean: number | null;
  bbp_stderr: number | null;
  spectrum_efficiency_mean: number | null;
  spectrum_efficiency_stderr: number | null;
  identity: string[];
}

export interface Point {
  x: number;
  y: number;
  /** Standard error across seeds; null hides the error bar. */
  yerr: number | null;
  /** True when a zero y-value was dropped from a log-scale plot. */
  omitted: boolean;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface FigureData {
  series: Series[];
  xLabel: string;
  yLabel: string;
  yScale: YScale;
  /** Identity columns pinned to their most frequent value before plotting. */
  fixed: Record<string, string>;
  /** Count of zero y-values omitted because of the log scale. */
  omittedZeros: number;
}

export class FigureError extends Error {}
