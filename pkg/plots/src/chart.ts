/**
 * Deterministic SVG line chart: one series per degree kind, x = size,
 * y = mean delta on a fixed [0, 1] axis. Pure string generation, no DOM.
 */

import { DEGREE_KINDS, DegreeKind, ExperimentTag, Row, SchemaError } from "./schema.js";

const WIDTH = 640;
const HEIGHT = 400;
const MARGIN = { top: 48, right: 32, bottom: 56, left: 64 };

const COLORS: Record<DegreeKind, string> = {
  min: "#1f77b4",
  mean: "#ff7f0e",
  median: "#2ca02c",
};

const X_LABEL: Record<ExperimentTag, string> = {
  delta: "expansion size (new arguments)",
  impact: "framework size (arguments)",
};

const Y_LABEL: Record<ExperimentTag, string> = {
  delta: "mean agreement delta",
  impact: "mean |value impact|",
};

export interface ChartSpec {
  rows: Row[];
  normalized: boolean;
  title?: string;
}

function fmt(value: number): string {
  return Number(value.toFixed(2)).toString();
}

export function buildChart(spec: ChartSpec): string {
  const selected = spec.rows.filter((r) => r.normalized === spec.normalized);
  if (selected.length === 0) {
    throw new SchemaError(
      `no rows with normalized=${spec.normalized} to plot`,
    );
  }
  const experiments = new Set(selected.map((r) => r.experiment));
  if (experiments.size > 1) {
    throw new SchemaError("file mixes delta and impact rows");
  }
  const experiment = selected[0].experiment;

  const sizes = [...new Set(selected.map((r) => r.sizeParam))].sort((a, b) => a - b);
  const x0 = sizes[0];
  const x1 = sizes[sizes.length - 1];
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const xOf = (size: number) =>
    MARGIN.left + (x1 === x0 ? plotW / 2 : ((size - x0) / (x1 - x0)) * plotW);
  const yOf = (value: number) => MARGIN.top + (1 - value) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  const title =
    spec.title ??
    `${experiment} experiment (${spec.normalized ? "normalized" : "raw"})`;
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${title}</text>`,
  );

  // axes and gridlines; the y domain is pinned to [0, 1]
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    const y = yOf(tick);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${WIDTH - MARGIN.right}" y2="${y}" ` +
        `stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${fmt(tick)}</text>`,
    );
  }
  const xStep = sizes.length > 16 ? 2 : 1;
  sizes.forEach((size, i) => {
    if (i % xStep !== 0 && i !== sizes.length - 1) return;
    const x = xOf(size);
    parts.push(
      `<line x1="${x}" y1="${HEIGHT - MARGIN.bottom}" x2="${x}" ` +
        `y2="${HEIGHT - MARGIN.bottom + 4}" stroke="#333333"/>`,
      `<text x="${x}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle">${size}</text>`,
    );
  });
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
      `y2="${HEIGHT - MARGIN.bottom}" stroke="#333333"/>`,
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" ` +
      `x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="#333333"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle">` +
      `${X_LABEL[experiment]}</text>`,
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">` +
      `${Y_LABEL[experiment]}${spec.normalized ? " (normalized)" : ""}</text>`,
  );

  // series in fixed kind order so output is deterministic
  for (const kind of DEGREE_KINDS) {
    const points = selected
      .filter((r) => r.degreeKind === kind)
      .sort((a, b) => a.sizeParam - b.sizeParam);
    if (points.length === 0) {
      throw new SchemaError(`missing series for degree kind '${kind}'`);
    }
    const coords = points.map((p) => `${xOf(p.sizeParam)},${yOf(p.meanDelta)}`);
    parts.push(
      `<polyline class="series series-${kind}" fill="none" stroke="${COLORS[kind]}" ` +
        `stroke-width="2" points="${coords.join(" ")}"/>`,
    );
    for (const p of points) {
      parts.push(
        `<circle class="point point-${kind}" cx="${xOf(p.sizeParam)}" ` +
          `cy="${yOf(p.meanDelta)}" r="3" fill="${COLORS[kind]}"/>`,
      );
    }
  }

  // legend, top right
  DEGREE_KINDS.forEach((kind, i) => {
    const y = MARGIN.top + 8 + i * 18;
    const x = WIDTH - MARGIN.right - 108;
    parts.push(
      `<g class="legend-entry">` +
        `<line x1="${x}" y1="${y}" x2="${x + 22}" y2="${y}" ` +
        `stroke="${COLORS[kind]}" stroke-width="2"/>` +
        `<text x="${x + 28}" y="${y + 4}">${kind}</text></g>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
