#!/usr/bin/env node
/**
 * argagree-plots render --in results.csv --out chart.svg [--normalized] [--title T]
 *
 * Exit codes: 0 written, 1 schema/IO failure, 2 usage error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { buildChart } from "./chart.js";
import { parseCsv, SchemaError } from "./schema.js";

const USAGE =
  "usage: argagree-plots render --in FILE --out FILE [--normalized] [--title TITLE]";

interface Options {
  input: string;
  output: string;
  normalized: boolean;
  title?: string;
}

function parseArgs(argv: string[]): Options {
  if (argv[0] !== "render") throw new UsageError(`unknown command '${argv[0] ?? ""}'`);
  let input: string | undefined;
  let output: string | undefined;
  let normalized = false;
  let title: string | undefined;
  for (let i = 1; i < argv.length; i++) {
    switch (argv[i]) {
      case "--in":
        input = argv[++i];
        break;
      case "--out":
        output = argv[++i];
        break;
      case "--normalized":
        normalized = true;
        break;
      case "--title":
        title = argv[++i];
        break;
      default:
        throw new UsageError(`unknown option '${argv[i]}'`);
    }
  }
  if (!input || !output) throw new UsageError("--in and --out are required");
  return { input, output, normalized, title };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  let options: Options;
  try {
    options = parseArgs(argv);
  } catch (err) {
    console.error(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  try {
    const text = readFileSync(options.input, "utf-8");
    const svg = buildChart({
      rows: parseCsv(text),
      normalized: options.normalized,
      title: options.title,
    });
    writeFileSync(options.output, svg, "utf-8");
    console.log(`wrote ${options.output}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
