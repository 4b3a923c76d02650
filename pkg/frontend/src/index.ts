export { AGG_COLUMNS, IDENTITY_COLUMNS, RUN_COLUMNS, parseCsv } from "./csv.js";
export type { ParsedCsv } from "./csv.js";
export { aggregateRuns, fmean, fsum, stderrOfMean } from "./aggregate.js";
export { buildFigure, defaultScale } from "./figure.js";
export { renderSvg } from "./svg.js";
export { render } from "./render.js";
export type {
  AggRow,
  FigureData,
  FigureSpec,
  Point,
  RunRow,
  Series,
  SeriesKey,
  XAxis,
  YMetric,
  YScale,
} from "./types.js";
export { FigureError } from "./types.js";
