import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { buildChart } from "../src/chart.js";
import { CSV_HEADER, parseCsv } from "../src/schema.js";

const FIXTURES = join(__dirname, "fixtures");

const TINY = [
  CSV_HEADER,
  "impact,5,min,fixed,false,30,7,0.25",
  "impact,5,mean,fixed,false,30,7,0.125",
  "impact,5,median,fixed,false,30,7,0",
  "",
].join("\n");

function seriesPoints(svg: string, kind: string): Array<[number, number]> {
  const match = svg.match(new RegExp(`series-${kind}"[^>]*points="([^"]*)"`));
  expect(match).not.toBeNull();
  return match![1].split(" ").map((pair) => {
    const [x, y] = pair.split(",").map(Number);
    return [x, y];
  });
}

describe("buildChart", () => {
  it("renders three single-point series from a three-row file", () => {
    const svg = buildChart({ rows: parseCsv(TINY), normalized: false });
    expect(svg.startsWith("<svg ")).toBe(true);
    for (const kind of ["min", "mean", "median"]) {
      expect(seriesPoints(svg, kind)).toHaveLength(1);
    }
    expect(svg.match(/legend-entry/g)).toHaveLength(3);
  });

  it("renders the recorded seed-42 delta run with y inside [0, 1]", () => {
    const text = readFileSync(join(FIXTURES, "delta_seed42.csv"), "utf-8");
    const rows = parseCsv(text);
    const svg = buildChart({ rows, normalized: false });
    expect(svg.match(/legend-entry/g)).toHaveLength(3);
    const yTop = 48;
    const yBottom = 400 - 56;
    for (const kind of ["min", "mean", "median"]) {
      const points = seriesPoints(svg, kind);
      expect(points).toHaveLength(15);
      for (const [, y] of points) {
        expect(y).toBeGreaterThanOrEqual(yTop);
        expect(y).toBeLessThanOrEqual(yBottom);
      }
    }
  });

  it("is deterministic", () => {
    const rows = parseCsv(TINY);
    expect(buildChart({ rows, normalized: false }))
      .toBe(buildChart({ rows, normalized: false }));
  });

  it("normalized and raw charts differ only in y coordinates", () => {
    const text = readFileSync(join(FIXTURES, "delta_seed42.csv"), "utf-8");
    const rows = parseCsv(text);
    const raw = buildChart({ rows, normalized: false, title: "t" });
    const norm = buildChart({ rows, normalized: true, title: "t" });
    for (const kind of ["min", "mean", "median"]) {
      const xs = (svg: string) => seriesPoints(svg, kind).map(([x]) => x);
      expect(xs(raw)).toEqual(xs(norm));
    }
    expect(raw).not.toBe(norm);
  });

  it("refuses a file without the requested normalization rows", () => {
    const onlyRaw = parseCsv(TINY);
    expect(() => buildChart({ rows: onlyRaw, normalized: true }))
      .toThrow(/normalized=true/);
  });

  it("refuses mixed experiments", () => {
    const mixed = parseCsv(
      [
        CSV_HEADER,
        "impact,5,min,fixed,false,30,7,0.25",
        "delta,5,mean,fixed,false,30,7,0.125",
        "delta,5,median,fixed,false,30,7,0",
        "",
      ].join("\n"),
    );
    expect(() => buildChart({ rows: mixed, normalized: false })).toThrow(/mixes/);
  });
});
