import { describe, expect, it } from "vitest";
import { parseCsv } from "../src/csv.js";
import { buildFigure } from "../src/figure.js";
import { renderSvg } from "../src/svg.js";
import { FigureSpec } from "../src/types.js";
import { fixture, runCsv } from "./helpers.js";

function build(csvText: string, over: Partial<FigureSpec>) {
  return buildFigure(parseCsv(csvText), {
    xAxis: "slot_width",
    yMetric: "bp",
    seriesKey: "topology",
    input: "unused",
    output: "unused",
    ...over,
  });
}

describe("renderSvg", () => {
  const uniform = fixture("uniform.csv");

  it("emits a standalone SVG document with axes, legend and labels", () => {
    const svg = renderSvg(build(uniform, {}));
    expect(svg.startsWith('<svg xmlns="http://www.w3.org/2000/svg"')).toBe(true);
    expect(svg.endsWith("</svg>")).toBe(true);
    expect(svg).toContain("Blocking probability");
    expect(svg).toContain("Slot width (GHz)");
    for (const label of ["nsfnet", "single_link", "usnet"]) {
      expect(svg).toContain(`>${label}</text>`);
    }
    expect(svg).toContain("fixed: load_erlang_per_node=20.0");
    expect(svg).not.toContain("NaN");
    expect(svg).not.toContain("undefined");
  });

  it("renders the same bytes for the same input", () => {
    const a = renderSvg(build(uniform, { yMetric: "bbp", seriesKey: "load" }));
    const b = renderSvg(build(uniform, { yMetric: "bbp", seriesKey: "load" }));
    expect(a).toBe(b);
  });

  it("draws error bars and says what they are", () => {
    const svg = renderSvg(build(uniform, {}));
    expect(svg).toContain("error bars: ±1 standard error across seeds");
  });

  it("breaks lines at omitted zeros and footnotes the omission", () => {
    const rows = runCsv(
      { slot_width_ghz: "6.25", bp: "0.01" },
      { slot_width_ghz: "12.5", bp: "0.02" },
      { slot_width_ghz: "25.0", bp: "0.0" },
      { slot_width_ghz: "50.0", bp: "0.04" },
      { slot_width_ghz: "100.0", bp: "0.08" },
    );
    const svg = renderSvg(build(rows, {}));
    // the zero splits one line of five points into 2-point and 2-point runs
    const polylines = svg.match(/<polyline /g) ?? [];
    expect(polylines).toHaveLength(2);
    expect(svg).toContain("1 zero value omitted (log y-axis)");
  });

  it("keeps zeros on linear scales without a footnote", () => {
    const rows = runCsv(
      { slot_width_ghz: "6.25", bp: "0.01" },
      { slot_width_ghz: "12.5", bp: "0.0" },
      { slot_width_ghz: "25.0", bp: "0.02" },
    );
    const svg = renderSvg(build(rows, { yScale: "linear" }));
    expect(svg.match(/<polyline /g) ?? []).toHaveLength(1);
    expect(svg).not.toContain("omitted");
  });

  it("renders a single point without error", () => {
    const svg = renderSvg(build(runCsv({}), {}));
    expect(svg).toContain("<circle");
    expect(svg).not.toContain("<polyline");
    expect(svg).not.toContain("NaN");
  });

  it("escapes XML-hostile characters in labels", () => {
    const rows = runCsv({ topology: 'ring<3>&"x"' });
    const svg = renderSvg(build(rows, {}));
    expect(svg).toContain("ring&lt;3&gt;&amp;&quot;x&quot;");
    expect(svg).not.toContain("ring<3>");
  });

  it("plots spectrum efficiency on a linear axis", () => {
    const svg = renderSvg(build(uniform, { yMetric: "se" }));
    expect(svg).toContain("Spectrum efficiency");
    expect(svg).not.toContain("omitted");
    expect(svg).not.toContain("NaN");
  });
});
