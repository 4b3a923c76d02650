#!/usr/bin/env node
import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";
import { render } from "./render.js";
import { FigureError, FigureSpec, SeriesKey, XAxis, YMetric } from "./types.js";

const USAGE = `usage: plot --csv <file> --x <axis> --y <metric> --series <key> --out <img> [--linear]

  --csv     sweep CSV (per-seed rows or seed-aggregated rows)
  --x       x axis: slot_width | b_max | b_avg
  --y       metric: bp | bbp | se
  --series  one line per value of: topology | load | slot_width
  --out     output SVG path
  --linear  force a linear y axis (bp and bbp default to log)

exit codes: 0 figure written, 1 bad invocation, 2 input could not be plotted`;

const X_VALUES = new Set(["slot_width", "b_max", "b_avg"]);
const Y_VALUES = new Set(["bp", "bbp", "se"]);
const SERIES_VALUES = new Set(["topology", "load", "slot_width"]);

function fail(message: string): number {
  process.stderr.write(`error: ${message}\n`);
  return 1;
}

export function main(argv: string[]): number {
  // tolerate an explicit leading subcommand so `plot ...` and
  // `eonsim-plot plot ...` both work
  const args = argv[0] === "plot" ? argv.slice(1) : argv;
  let parsed;
  try {
    parsed = parseArgs({
      args,
      options: {
        csv: { type: "string" },
        x: { type: "string" },
        y: { type: "string" },
        series: { type: "string" },
        out: { type: "string" },
        linear: { type: "boolean", default: false },
        help: { type: "boolean", short: "h", default: false },
      },
      allowPositionals: false,
    });
  } catch (err) {
    return fail(`${(err as Error).message}\n${USAGE}`);
  }
  const opts = parsed.values;
  if (opts.help) {
    process.stdout.write(USAGE + "\n");
    return 0;
  }
  for (const name of ["csv", "x", "y", "series", "out"] as const) {
    if (opts[name] === undefined) return fail(`--${name} is required\n${USAGE}`);
  }
  if (!X_VALUES.has(opts.x!)) return fail(`--x must be one of: ${[...X_VALUES].join(", ")}`);
  if (!Y_VALUES.has(opts.y!)) return fail(`--y must be one of: ${[...Y_VALUES].join(", ")}`);
  if (!SERIES_VALUES.has(opts.series!)) {
    return fail(`--series must be one of: ${[...SERIES_VALUES].join(", ")}`);
  }

  const spec: FigureSpec = {
    xAxis: opts.x as XAxis,
    yMetric: opts.y as YMetric,
    seriesKey: opts.series as SeriesKey,
    input: opts.csv!,
    output: opts.out!,
  };
  if (opts.linear) spec.yScale = "linear";

  try {
    const data = render(spec);
    const points = data.series.reduce(
      (n, s) => n + s.points.filter((p) => !p.omitted).length,
      0,
    );
    process.stdout.write(
      `wrote ${spec.output} (${data.series.length} series, ${points} points)\n`,
    );
    return 0;
  } catch (err) {
    if (err instanceof FigureError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    if (err instanceof Error && "code" in err && err.code === "ENOENT") {
      process.stderr.write(`error: cannot read ${spec.input}\n`);
      return 2;
    }
    throw err;
  }
}

const entry = process.argv[1];
if (entry !== undefined && import.meta.url === pathToFileURL(entry).href) {
  process.exit(main(process.argv.slice(2)));
}
