import { describe, expect, it } from "vitest";

import { chartLines, renderChartSvg, segments } from "../src/chart";
import { queryFixture } from "./helpers";

describe("plotted values", () => {
  it("are the response's smoothed values, untouched", () => {
    const fixture = queryFixture();
    const lines = chartLines(fixture.series);
    expect(lines).toHaveLength(2);
    for (const [index, line] of lines.entries()) {
      const source = fixture.series[index]!;
      expect(line.pattern).toBe(source.pattern);
      expect(line.values).toHaveLength(source.points.length);
      line.values.forEach((value, i) => {
        // exact identity, not approximate: the client must not re-smooth
        expect(Object.is(value, source.points[i]!.smoothed)).toBe(true);
      });
    }
  });

  it("keeps window edges as gaps", () => {
    const lines = chartLines(queryFixture().series);
    for (const line of lines) {
      expect(line.values[0]).toBeNull();
      expect(line.values[line.values.length - 1]).toBeNull();
    }
  });
});

describe("gap handling", () => {
  it("splits value runs at nulls", () => {
    expect(segments([null, 1, 2, null, null, 3])).toEqual([
      [
        { index: 1, value: 1 },
        { index: 2, value: 2 },
      ],
      [{ index: 5, value: 3 }],
    ]);
  });

  it("keeps an unbroken series as one run", () => {
    expect(segments([0.5, 0.25])).toEqual([
      [
        { index: 0, value: 0.5 },
        { index: 1, value: 0.25 },
      ],
    ]);
  });

  it("handles all-null and empty input", () => {
    expect(segments([null, null])).toEqual([]);
    expect(segments([])).toEqual([]);
  });
});

describe("svg output", () => {
  it("draws one path per contiguous run and a marker for isolated points", () => {
    const series = [
      {
        pattern: "corona",
        kind: "unigram" as const,
        points: [
          { date: "2020-04-01", abs: 1, rel: 0.1, smoothed: null },
          { date: "2020-04-02", abs: 1, rel: 0.1, smoothed: 0.1 },
          { date: "2020-04-03", abs: 1, rel: 0.1, smoothed: 0.2 },
          { date: "2020-04-04", abs: 1, rel: 0.1, smoothed: null },
          { date: "2020-04-05", abs: 1, rel: 0.1, smoothed: 0.3 },
        ],
      },
    ];
    const dates = series[0]!.points.map((point) => point.date);
    const svg = renderChartSvg(series, dates);
    expect(svg.match(/<path /g)).toHaveLength(1); // the two-point run
    expect(svg.match(/<circle /g)).toHaveLength(1); // the isolated point
    expect(svg).toContain("corona");
  });

  it("escapes pattern text in the legend", () => {
    const series = [
      {
        pattern: "a<b & c",
        kind: "unigram" as const,
        points: [{ date: "2020-04-01", abs: 1, rel: 0.5, smoothed: 0.5 }],
      },
    ];
    const svg = renderChartSvg(series, ["2020-04-01"]);
    expect(svg).toContain("a&lt;b &amp; c");
    expect(svg).not.toContain("a<b");
  });

  it("renders axis labels from the date range", () => {
    const fixture = queryFixture();
    const dates = fixture.series[0]!.points.map((point) => point.date);
    const svg = renderChartSvg(fixture.series, dates);
    expect(svg).toContain("2020-04-01");
    expect(svg).toContain("2020-04-05");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.endsWith("</svg>")).toBe(true);
  });
});
