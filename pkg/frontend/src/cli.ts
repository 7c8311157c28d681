#!/usr/bin/env node
import { resolve } from "node:path";
import { fileURLToPath } from "node:url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { MissingInput, SchemaMismatch } from "./errors.js";
import { render } from "./render.js";
import { type FigureKind, KINDS } from "./schemas.js";

const EXIT_OK = 0;
const EXIT_VALIDATION = 2;

export function main(argv: string[]): number {
  const parser = yargs(argv)
    .scriptName("padic-squares-render")
    .command(
      "render <kind> <input> <output>",
      "render one CSV produced by the padic-squares CLI as an SVG figure",
      (y) =>
        y
          .positional("kind", {
            describe: `figure kind (${KINDS.join("|")})`,
            type: "string",
            demandOption: true,
          })
          .positional("input", {
            describe: "input CSV path",
            type: "string",
            demandOption: true,
          })
          .positional("output", {
            describe: "output SVG path",
            type: "string",
            demandOption: true,
          })
          .option("title", {
            describe: "figure title (default depends on kind)",
            type: "string",
          }),
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      throw err ?? new Error(msg);
    });
  let args;
  try {
    args = parser.parseSync();
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return EXIT_VALIDATION;
  }
  const kind = args["kind"] as string;
  if (!(KINDS as readonly string[]).includes(kind)) {
    console.error(
      `error: unknown kind ${JSON.stringify(kind)}; ` +
        `expected one of ${KINDS.join(", ")}`,
    );
    return EXIT_VALIDATION;
  }
  try {
    render({
      kind: kind as FigureKind,
      inputCsv: args["input"] as string,
      outputImage: args["output"] as string,
      title: args["title"] as string | undefined,
    });
  } catch (err) {
    if (err instanceof MissingInput || err instanceof SchemaMismatch) {
      console.error(`error: ${err.name}: ${err.message}`);
      return EXIT_VALIDATION;
    }
    throw err;
  }
  console.log(`wrote ${args["output"]}`);
  return EXIT_OK;
}

const entry = process.argv[1];
if (entry !== undefined && fileURLToPath(import.meta.url) === resolve(entry)) {
  process.exit(main(hideBin(process.argv)));
}
