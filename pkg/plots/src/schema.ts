/**
 * Strict reader for the experiment CSV contract.
 *
 * The producing CLI guarantees the exact header below, LF newlines, and one
 * row per (experiment, size, degree kind, normalized flag) aggregate. Any
 * deviation is a SchemaError; this package never guesses.
 */

export const CSV_HEADER =
  "experiment,size_param,degree_kind,topic_mode,normalized,reps,seed,mean_delta";

export const DEGREE_KINDS = ["min", "mean", "median"] as const;
export type DegreeKind = (typeof DEGREE_KINDS)[number];

const EXPERIMENTS = ["delta", "impact"] as const;
export type ExperimentTag = (typeof EXPERIMENTS)[number];

const TOPIC_MODES = ["fixed", "expanding", "proportional"] as const;

export interface Row {
  experiment: ExperimentTag;
  sizeParam: number;
  degreeKind: DegreeKind;
  topicMode: (typeof TOPIC_MODES)[number];
  normalized: boolean;
  reps: number;
  seed: number;
  meanDelta: number;
}

export class SchemaError extends Error {}

function fail(line: number, message: string): never {
  throw new SchemaError(`line ${line}: ${message}`);
}

function parseIntField(raw: string, line: number, field: string): number {
  if (!/^[0-9]+$/.test(raw)) fail(line, `${field} must be a nonnegative integer, got '${raw}'`);
  return Number(raw);
}

function oneOf<T extends string>(raw: string, allowed: readonly T[], line: number, field: string): T {
  if (!(allowed as readonly string[]).includes(raw)) {
    fail(line, `${field} must be one of ${allowed.join("|")}, got '${raw}'`);
  }
  return raw as T;
}

export function parseCsv(text: string): Row[] {
  if (text.includes("\r")) throw new SchemaError("line 1: expected LF newlines");
  const lines = text.split("\n");
  if (lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new SchemaError("line 1: empty file");
  if (lines[0] !== CSV_HEADER) {
    throw new SchemaError(`line 1: header mismatch, expected '${CSV_HEADER}'`);
  }
  const rows: Row[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const parts = lines[i].split(",");
    if (parts.length !== 8) fail(lineNo, `expected 8 fields, got ${parts.length}`);
    const [experiment, size, kind, mode, normalized, reps, seed, mean] = parts;
    const meanValue = Number(mean);
    if (mean === "" || !Number.isFinite(meanValue)) {
      fail(lineNo, `mean_delta must be a finite number, got '${mean}'`);
    }
    if (meanValue < 0 || meanValue > 1) {
      fail(lineNo, `mean_delta must lie in [0, 1], got '${mean}'`);
    }
    rows.push({
      experiment: oneOf(experiment, EXPERIMENTS, lineNo, "experiment"),
      sizeParam: parseIntField(size, lineNo, "size_param"),
      degreeKind: oneOf(kind, DEGREE_KINDS, lineNo, "degree_kind"),
      topicMode: oneOf(mode, TOPIC_MODES, lineNo, "topic_mode"),
      normalized: oneOf(normalized, ["false", "true"], lineNo, "normalized") === "true",
      reps: parseIntField(reps, lineNo, "reps"),
      seed: parseIntField(seed, lineNo, "seed"),
      meanDelta: meanValue,
    });
  }
  return rows;
}
