/** Pure SVG line chart for relative-frequency series.
 *
 * The plotted y-values are taken from the response untouched: the smoothed
 * value when present, a gap where it is null. No re-smoothing, rounding, or
 * interpolation happens on the client.
 */

import type { PatternSeries } from "./types";

export interface ChartLine {
  pattern: string;
  kind: "unigram" | "bigram";
  /** One entry per calendar day of the response; null marks a gap. */
  values: (number | null)[];
}

export interface ChartLayout {
  width: number;
  height: number;
  marginLeft: number;
  marginRight: number;
  marginTop: number;
  marginBottom: number;
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 720,
  height: 360,
  marginLeft: 64,
  marginRight: 16,
  marginTop: 16,
  marginBottom: 28,
};

export const LINE_COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#e377c2",
  "#17becf",
  "#bcbd22",
  "#7f7f7f",
];

/** Exactly the values the chart will draw, one line per pattern. */
export function chartLines(series: PatternSeries[]): ChartLine[] {
  return series.map((entry) => ({
    pattern: entry.pattern,
    kind: entry.kind,
    values: entry.points.map((point) => point.smoothed),
  }));
}

function yDomain(lines: ChartLine[]): number {
  let top = 0;
  for (const line of lines) {
    for (const value of line.values) {
      if (value !== null && value > top) {
        top = value;
      }
    }
  }
  return top > 0 ? top : 1;
}

/** Split a line into runs of consecutive non-null values (gaps break runs). */
export function segments(values: (number | null)[]): { index: number; value: number }[][] {
  const runs: { index: number; value: number }[][] = [];
  let current: { index: number; value: number }[] = [];
  values.forEach((value, index) => {
    if (value === null) {
      if (current.length) {
        runs.push(current);
        current = [];
      }
    } else {
      current.push({ index, value });
    }
  });
  if (current.length) {
    runs.push(current);
  }
  return runs;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderChartSvg(
  series: PatternSeries[],
  dates: string[],
  layout: ChartLayout = DEFAULT_LAYOUT,
): string {
  const lines = chartLines(series);
  const innerWidth = layout.width - layout.marginLeft - layout.marginRight;
  const innerHeight = layout.height - layout.marginTop - layout.marginBottom;
  const top = yDomain(lines);
  const slots = Math.max(dates.length - 1, 1);
  const x = (index: number) => layout.marginLeft + (index / slots) * innerWidth;
  const y = (value: number) => layout.marginTop + innerHeight - (value / top) * innerHeight;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}" ` +
      `width="${layout.width}" height="${layout.height}" role="img">`,
  );
  parts.push(
    `<rect x="0" y="0" width="${layout.width}" height="${layout.height}" fill="white"/>`,
  );
  // axes
  const axisY = layout.marginTop + innerHeight;
  parts.push(
    `<line x1="${layout.marginLeft}" y1="${axisY}" x2="${layout.marginLeft + innerWidth}" ` +
      `y2="${axisY}" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<line x1="${layout.marginLeft}" y1="${layout.marginTop}" x2="${layout.marginLeft}" ` +
      `y2="${axisY}" stroke="#444" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${layout.marginLeft - 6}" y="${layout.marginTop + 4}" text-anchor="end" ` +
      `font-size="10">${top.toExponential(2)}</text>`,
  );
  parts.push(
    `<text x="${layout.marginLeft - 6}" y="${axisY}" text-anchor="end" font-size="10">0</text>`,
  );
  if (dates.length) {
    parts.push(
      `<text x="${layout.marginLeft}" y="${layout.height - 8}" font-size="10">` +
        `${escapeXml(dates[0] ?? "")}</text>`,
    );
    parts.push(
      `<text x="${layout.marginLeft + innerWidth}" y="${layout.height - 8}" ` +
        `text-anchor="end" font-size="10">${escapeXml(dates[dates.length - 1] ?? "")}</text>`,
    );
  }

  lines.forEach((line, lineIndex) => {
    const color = LINE_COLORS[lineIndex % LINE_COLORS.length];
    for (const run of segments(line.values)) {
      if (run.length === 1) {
        const only = run[0]!;
        parts.push(
          `<circle cx="${x(only.index)}" cy="${y(only.value)}" r="2.5" fill="${color}"/>`,
        );
        continue;
      }
      const path = run
        .map((point, i) => `${i === 0 ? "M" : "L"}${x(point.index)} ${y(point.value)}`)
        .join(" ");
      parts.push(
        `<path d="${path}" fill="none" stroke="${color}" stroke-width="1.5"/>`,
      );
    }
    const legendY = layout.marginTop + 14 * (lineIndex + 1);
    parts.push(
      `<rect x="${layout.marginLeft + 8}" y="${legendY - 8}" width="10" height="3" fill="${color}"/>`,
    );
    parts.push(
      `<text x="${layout.marginLeft + 22}" y="${legendY - 3}" font-size="11">` +
        `${escapeXml(line.pattern)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("");
}
