import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import { parseCsv } from "./csv.js";
import { buildFigure } from "./figure.js";
import { renderSvg } from "./svg.js";
import { FigureData, FigureSpec } from "./types.js";

/**
 * Read the input CSV, build the figure, and write it to the output path
 * as an SVG document. Returns the plotted data so callers can inspect
 * exactly what went into the image.
 */
export function render(spec: FigureSpec): FigureData {
  const text = readFileSync(spec.input, "utf8");
  const data = buildFigure(parseCsv(text), spec);
  mkdirSync(dirname(spec.output), { recursive: true });
  writeFileSync(spec.output, renderSvg(data));
  return data;
}
