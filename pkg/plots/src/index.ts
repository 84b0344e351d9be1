export { buildChart, type ChartSpec } from "./chart.js";
export { main } from "./cli.js";
export { CSV_HEADER, DEGREE_KINDS, parseCsv, SchemaError, type Row } from "./schema.js";
