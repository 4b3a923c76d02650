import { aggregateRuns } from "./aggregate.js";
import { IDENTITY_COLUMNS, ParsedCsv } from "./csv.js";
import {
  AggRow,
  FigureData,
  FigureError,
  FigureSpec,
  Point,
  Series,
  SeriesKey,
  XAxis,
  YMetric,
  YScale,
} from "./types.js";

const X_LABEL: Record<XAxis, string> = {
  slot_width: "Slot width (GHz)",
  b_max: "Maximum requested bandwidth (Gbps)",
  b_avg: "Mean requested bandwidth (Gbps)",
};

const Y_LABEL: Record<YMetric, string> = {
  bp: "Blocking probability",
  bbp: "Bandwidth blocking probability",
  se: "Spectrum efficiency",
};

/** Identity-column index holding each x-axis value. */
const X_COLUMN: Record<XAxis, number> = {
  slot_width: 1,
  b_max: 5, // dist_param2 of uniform rows
  b_avg: 4, // dist_param1 of poisson rows
};

/** Distribution whose parameter columns carry the bandwidth axis. */
const X_DIST: Partial<Record<XAxis, string>> = {
  b_max: "uniform",
  b_avg: "poisson",
};

const SERIES_COLUMN: Record<SeriesKey, number> = {
  topology: 0,
  load: 2,
  slot_width: 1,
};

export function defaultScale(metric: YMetric): YScale {
  return metric === "se" ? "linear" : "log";
}

function metricOf(row: AggRow, metric: YMetric): [number | null, number | null] {
  switch (metric) {
    case "bp":
      return [row.bp_mean, row.bp_stderr];
    case "bbp":
      return [row.bbp_mean, row.bbp_stderr];
    case "se":
      return [row.spectrum_efficiency_mean, row.spectrum_efficiency_stderr];
  }
}

/** Most frequent value; ties broken toward the numerically smallest. */
function pickModal(values: string[]): string {
  const counts = new Map<string, number>();
  for (const v of values) counts.set(v, (counts.get(v) ?? 0) + 1);
  let best: string | null = null;
  let bestCount = -1;
  for (const [v, count] of counts) {
    if (count > bestCount || (count === bestCount && best !== null && ordered(v, best) < 0)) {
      best = v;
      bestCount = count;
    }
  }
  return best!;
}

function ordered(a: string, b: string): number {
  const na = Number(a);
  const nb = Number(b);
  if (Number.isFinite(na) && Number.isFinite(nb)) return na - nb;
  return a < b ? -1 : a > b ? 1 : 0;
}

function seriesLabel(key: SeriesKey, value: string): string {
  if (key === "topology") return value;
  const pretty = String(Number(value));
  return key === "load" ? `${pretty} E/node` : `${pretty} GHz`;
}

/**
 * Select and shape the plotted data. Per-seed input is first collapsed to
 * seed means. Identity columns other than the x-axis and the series key
 * must be single-valued; any that are not are pinned to their most
 * frequent value, and those pins are reported in `fixed` so the figure
 * can disclose them.
 */
export function buildFigure(parsed: ParsedCsv, spec: FigureSpec): FigureData {
  const xCol = X_COLUMN[spec.xAxis];
  const seriesCol = SERIES_COLUMN[spec.seriesKey];
  if (xCol === seriesCol) {
    throw new FigureError(`series key ${spec.seriesKey} duplicates the x axis ${spec.xAxis}`);
  }
  let rows = parsed.kind === "runs" ? aggregateRuns(parsed.rows) : [...parsed.rows];

  const requiredDist = X_DIST[spec.xAxis];
  if (requiredDist !== undefined) {
    rows = rows.filter((r) => r.dist === requiredDist);
    if (rows.length === 0) {
      throw new FigureError(
        `empty selection: x axis ${spec.xAxis} needs dist=${requiredDist} rows`,
      );
    }
  }

  const fixed: Record<string, string> = {};
  for (let col = 0; col < IDENTITY_COLUMNS.length; col++) {
    if (col === xCol || col === seriesCol) continue;
    const values = new Set(rows.map((r) => r.identity[col]!));
    if (values.size > 1) {
      const modal = pickModal(rows.map((r) => r.identity[col]!));
      rows = rows.filter((r) => r.identity[col] === modal);
      fixed[IDENTITY_COLUMNS[col]!] = modal;
    }
  }
  if (rows.length === 0) {
    throw new FigureError("empty selection after filtering");
  }

  const yScale = spec.yScale ?? defaultScale(spec.yMetric);
  const bySeries = new Map<string, AggRow[]>();
  for (const row of rows) {
    const key = row.identity[seriesCol]!;
    const bucket = bySeries.get(key);
    if (bucket === undefined) bySeries.set(key, [row]);
    else bucket.push(row);
  }

  let omittedZeros = 0;
  const series: Series[] = [...bySeries.keys()]
    .sort(ordered)
    .map((key) => {
      const bucket = bySeries.get(key)!;
      bucket.sort((a, b) => xValue(a, xCol) - xValue(b, xCol));
      const points: Point[] = [];
      for (const row of bucket) {
        const x = xValue(row, xCol);
        const prev = points[points.length - 1];
        if (prev !== undefined && prev.x === x) {
          throw new FigureError(
            `ambiguous input: several rows plot at x=${x} in series ${key}`,
          );
        }
        const [mean, stderr] = metricOf(row, spec.yMetric);
        if (mean === null) continue; // metric undefined for this grid point
        const omitted = yScale === "log" && mean <= 0;
        if (omitted) omittedZeros += 1;
        points.push({
          x,
          y: mean,
          yerr: row.n_seeds >= 3 && stderr !== null ? stderr : null,
          omitted,
        });
      }
      return { label: seriesLabel(spec.seriesKey, key), points };
    })
    .filter((s) => s.points.length > 0);
  if (series.length === 0 || series.every((s) => s.points.every((p) => p.omitted))) {
    throw new FigureError("empty selection after filtering");
  }

  return {
    series,
    xLabel: X_LABEL[spec.xAxis],
    yLabel: Y_LABEL[spec.yMetric],
    yScale,
    fixed,
    omittedZeros,
  };
}

function xValue(row: AggRow, xCol: number): number {
  const raw = row.identity[xCol]!;
  const v = Number(raw);
  if (raw === "" || !Number.isFinite(v)) {
    throw new FigureError(`non-numeric x value ${JSON.stringify(raw)}`);
  }
  return v;
}
