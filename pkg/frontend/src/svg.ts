import { scaleLinear } from "d3-scale";
import { FigureData, Point } from "./types.js";

const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#e15759",
  "#76b7b2",
  "#59a14f",
  "#edc949",
  "#b07aa1",
  "#9c755f",
  "#bab0ac",
  "#17becf",
];

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 58, right: 26, bottom: 66, left: 84 };

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmtTick(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) {
    return v.toExponential(0).replace("e+", "e");
  }
  return String(Number(v.toPrecision(10)));
}

function px(v: number): string {
  return String(Number(v.toFixed(2)));
}

interface Ticks {
  toPixel: (v: number) => number;
  ticks: number[];
  lo: number;
  hi: number;
}

function linearAxis(lo: number, hi: number, range: [number, number]): Ticks {
  if (lo === hi) {
    const pad = Math.max(Math.abs(lo) * 0.1, 1e-12);
    lo -= pad;
    hi += pad;
  }
  const scale = scaleLinear().domain([lo, hi]).nice().range(range);
  const [dlo, dhi] = scale.domain() as [number, number];
  return { toPixel: (v) => scale(v), ticks: scale.ticks(6), lo: dlo, hi: dhi };
}

function logAxis(lo: number, hi: number, range: [number, number]): Ticks {
  let klo = Math.floor(Math.log10(lo) + 1e-12);
  let khi = Math.ceil(Math.log10(hi) - 1e-12);
  if (klo === khi) {
    klo -= 1;
    khi += 1;
  }
  const ticks: number[] = [];
  const step = khi - klo > 9 ? 2 : 1;
  for (let k = klo; k <= khi; k += step) ticks.push(10 ** k);
  const [plo, phi] = range;
  const toPixel = (v: number) =>
    plo + ((Math.log10(v) - klo) / (khi - klo)) * (phi - plo);
  return { toPixel, ticks, lo: 10 ** klo, hi: 10 ** khi };
}

function marker(shape: number, cx: number, cy: number, color: string): string {
  const r = 3.4;
  switch (shape % 4) {
    case 0:
      return `<circle cx="${px(cx)}" cy="${px(cy)}" r="${r}" fill="${color}"/>`;
    case 1:
      return `<rect x="${px(cx - r)}" y="${px(cy - r)}" width="${px(2 * r)}" height="${px(2 * r)}" fill="${color}"/>`;
    case 2:
      return `<path d="M ${px(cx)} ${px(cy - r - 1)} L ${px(cx + r + 1)} ${px(cy + r)} L ${px(cx - r - 1)} ${px(cy + r)} Z" fill="${color}"/>`;
    default:
      return `<path d="M ${px(cx)} ${px(cy - r - 1)} L ${px(cx + r + 1)} ${px(cy)} L ${px(cx)} ${px(cy + r + 1)} L ${px(cx - r - 1)} ${px(cy)} Z" fill="${color}"/>`;
  }
}

/**
 * Render a figure as a standalone SVG document. Output depends only on
 * the figure data, so a given CSV and spec always produce the same bytes.
 */
export function renderSvg(data: FigureData): string {
  const plotL = MARGIN.left;
  const plotR = WIDTH - MARGIN.right;
  const plotT = MARGIN.top;
  const plotB = HEIGHT - MARGIN.bottom;

  const shown: Point[] = data.series.flatMap((s) => s.points.filter((p) => !p.omitted));
  const xs = shown.map((p) => p.x);
  const yLo: number[] = [];
  const yHi: number[] = [];
  for (const p of shown) {
    yHi.push(p.yerr !== null ? p.y + p.yerr : p.y);
    const low = p.yerr !== null ? p.y - p.yerr : p.y;
    yLo.push(data.yScale === "log" && low <= 0 ? p.y : low);
  }

  const xAxis = linearAxis(Math.min(...xs), Math.max(...xs), [plotL, plotR]);
  const yAxis =
    data.yScale === "log"
      ? logAxis(Math.min(...yLo), Math.max(...yHi), [plotB, plotT])
      : linearAxis(Math.min(...yLo), Math.max(...yHi), [plotB, plotT]);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  const xTitle = data.xLabel.charAt(0).toLowerCase() + data.xLabel.slice(1);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15" font-weight="bold">${esc(`${data.yLabel} vs ${xTitle}`)}</text>`,
  );
  const pins = Object.entries(data.fixed)
    .map(([k, v]) => `${k}=${v}`)
    .join(", ");
  if (pins !== "") {
    parts.push(
      `<text x="${WIDTH / 2}" y="42" text-anchor="middle" font-size="11" fill="#555">${esc(`fixed: ${pins}`)}</text>`,
    );
  }

  for (const t of yAxis.ticks) {
    const y = yAxis.toPixel(t);
    parts.push(
      `<line x1="${plotL}" y1="${px(y)}" x2="${plotR}" y2="${px(y)}" stroke="#e4e4e4" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${plotL - 8}" y="${px(y + 3.5)}" text-anchor="end" font-size="11">${esc(fmtTick(t))}</text>`,
    );
  }
  for (const t of xAxis.ticks) {
    const x = xAxis.toPixel(t);
    parts.push(
      `<line x1="${px(x)}" y1="${plotB}" x2="${px(x)}" y2="${plotB + 5}" stroke="#333" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${px(x)}" y="${plotB + 19}" text-anchor="middle" font-size="11">${esc(fmtTick(t))}</text>`,
    );
  }
  parts.push(
    `<rect x="${plotL}" y="${plotT}" width="${plotR - plotL}" height="${plotB - plotT}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${(plotL + plotR) / 2}" y="${HEIGHT - 26}" text-anchor="middle" font-size="13">${esc(data.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${(plotT + plotB) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(plotT + plotB) / 2})">${esc(data.yLabel)}</text>`,
  );

  let anyErrorBars = false;
  data.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    // omitted points break the polyline into separate segments (gap)
    const segments: Point[][] = [];
    let current: Point[] = [];
    for (const p of s.points) {
      if (p.omitted) {
        if (current.length > 0) segments.push(current);
        current = [];
      } else {
        current.push(p);
      }
    }
    if (current.length > 0) segments.push(current);

    for (const seg of segments) {
      if (seg.length >= 2) {
        const d = seg
          .map((p) => `${px(xAxis.toPixel(p.x))},${px(yAxis.toPixel(p.y))}`)
          .join(" ");
        parts.push(
          `<polyline points="${d}" fill="none" stroke="${color}" stroke-width="1.6"/>`,
        );
      }
      for (const p of seg) {
        const cx = xAxis.toPixel(p.x);
        const cy = yAxis.toPixel(p.y);
        if (p.yerr !== null && p.yerr > 0) {
          anyErrorBars = true;
          const topHat = yAxis.toPixel(Math.min(p.y + p.yerr, yAxis.hi));
          const rawLow = p.y - p.yerr;
          const low =
            data.yScale === "log" && rawLow <= yAxis.lo
              ? plotB
              : yAxis.toPixel(Math.max(rawLow, yAxis.lo));
          parts.push(
            `<line x1="${px(cx)}" y1="${px(topHat)}" x2="${px(cx)}" y2="${px(low)}" stroke="${color}" stroke-width="1.1"/>`,
          );
          parts.push(
            `<line x1="${px(cx - 3.5)}" y1="${px(topHat)}" x2="${px(cx + 3.5)}" y2="${px(topHat)}" stroke="${color}" stroke-width="1.1"/>`,
          );
          if (low !== plotB) {
            parts.push(
              `<line x1="${px(cx - 3.5)}" y1="${px(low)}" x2="${px(cx + 3.5)}" y2="${px(low)}" stroke="${color}" stroke-width="1.1"/>`,
            );
          }
        }
        parts.push(marker(i, cx, cy, color));
      }
    }
  });

  const legendX = plotR - 178;
  let legendY = plotT + 14;
  parts.push(
    `<rect x="${legendX - 10}" y="${plotT + 2}" width="186" height="${data.series.length * 16 + 10}" fill="white" fill-opacity="0.85" stroke="#ccc"/>`,
  );
  data.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    parts.push(marker(i, legendX, legendY - 3.5, color));
    parts.push(
      `<text x="${legendX + 10}" y="${px(legendY)}" font-size="11">${esc(s.label)}</text>`,
    );
    legendY += 16;
  });

  const footnotes: string[] = [];
  if (data.omittedZeros > 0) {
    const s = data.omittedZeros === 1 ? "" : "s";
    footnotes.push(`${data.omittedZeros} zero value${s} omitted (log y-axis)`);
  }
  if (anyErrorBars) {
    footnotes.push("error bars: ±1 standard error across seeds");
  }
  if (footnotes.length > 0) {
    parts.push(
      `<text x="${plotL}" y="${HEIGHT - 8}" font-size="10.5" font-style="italic" fill="#666">${esc(footnotes.join("; "))}</text>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n");
}
