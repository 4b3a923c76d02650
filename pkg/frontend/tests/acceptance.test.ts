import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { parseCsv } from "../src/csv.js";
import { buildFigure } from "../src/figure.js";
import { render } from "../src/render.js";
import { FigureSpec, SeriesKey, XAxis, YMetric } from "../src/types.js";
import { fixturePath } from "./helpers.js";

/**
 * End-to-end gate for the figure component: every figure family renders
 * from the bundled preset CSVs (cut to 4,000 requests per run for test
 * speed), and the values plotted from per-seed input are bit-identical to
 * the seed-aggregated CSVs written by the simulator package.
 */

const FAMILIES: Array<{ csv: string; x: XAxis; series: SeriesKey }> = [
  { csv: "uniform", x: "slot_width", series: "topology" },
  { csv: "uniform", x: "slot_width", series: "load" },
  { csv: "uniform", x: "b_max", series: "slot_width" },
  { csv: "poisson", x: "slot_width", series: "topology" },
  { csv: "poisson", x: "slot_width", series: "load" },
  { csv: "poisson", x: "b_avg", series: "slot_width" },
  { csv: "constant", x: "slot_width", series: "topology" },
  { csv: "constant", x: "slot_width", series: "load" },
];

const METRICS: YMetric[] = ["bp", "bbp", "se"];

describe("figure regeneration from bundled preset data", () => {
  const tmp = mkdtempSync(join(tmpdir(), "figures-acceptance-"));
  let figures = 0;
  let exactPoints = 0;

  for (const family of FAMILIES) {
    for (const metric of METRICS) {
      it(`${family.csv}: ${metric} vs ${family.x} by ${family.series}`, () => {
        const out = join(tmp, `${family.csv}-${metric}-${family.x}-${family.series}.svg`);
        const spec: FigureSpec = {
          xAxis: family.x,
          yMetric: metric,
          seriesKey: family.series,
          input: fixturePath(`${family.csv}.csv`),
          output: out,
        };
        const plotted = render(spec);

        expect(existsSync(out)).toBe(true);
        const svg = readFileSync(out, "utf8");
        expect(svg.startsWith("<svg")).toBe(true);
        expect(svg.endsWith("</svg>")).toBe(true);
        expect(svg).not.toContain("NaN");
        expect(plotted.yScale).toBe(metric === "se" ? "linear" : "log");
        if (plotted.omittedZeros > 0) {
          expect(svg).toContain("omitted (log y-axis)");
        }

        // the same figure built from the simulator's own seed aggregation
        const reference = buildFigure(parseCsv(readFileSync(fixturePath(`${family.csv}_agg.csv`), "utf8")), spec);
        expect(plotted.series.map((s) => s.label)).toEqual(
          reference.series.map((s) => s.label),
        );
        for (let i = 0; i < plotted.series.length; i++) {
          const mine = plotted.series[i]!.points;
          const ref = reference.series[i]!.points;
          expect(mine.map((p) => p.x)).toEqual(ref.map((p) => p.x));
          for (let j = 0; j < mine.length; j++) {
            expect(mine[j]!.y).toBe(ref[j]!.y); // exact, not approximate
            expect(mine[j]!.omitted).toBe(ref[j]!.omitted);
            if (!mine[j]!.omitted) exactPoints += 1;
          }
        }
        figures += 1;
      });
    }
  }

  it("summary", () => {
    const ok = figures === FAMILIES.length * METRICS.length && exactPoints > 500;
    process.stdout.write(
      `ACCEPTANCE 9: ${ok ? "PASS" : "FAIL"} — ${figures} figures across ` +
        `${FAMILIES.length} families rendered from 3 preset CSVs; ` +
        `${exactPoints} plotted values equal the aggregate CSVs exactly\n`,
    );
    expect(ok).toBe(true);
  });
});
