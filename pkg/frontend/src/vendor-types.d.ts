/**
 * Minimal ambient declarations for runtime dependencies that ship without
 * their own TypeScript types. Only the surface this project uses is typed.
 */

declare module "yargs" {
  export interface Argv {
    scriptName(name: string): Argv;
    command(
      cmd: string,
      description: string,
      builder: (y: Argv) => Argv,
    ): Argv;
    positional(
      name: string,
      opts: { describe: string; type: string; demandOption?: boolean },
    ): Argv;
    option(
      name: string,
      opts: { describe: string; type: string },
    ): Argv;
    demandCommand(n: number): Argv;
    strict(): Argv;
    exitProcess(enabled: boolean): Argv;
    fail(handler: (msg: string, err: Error | undefined) => void): Argv;
    parseSync(): Record<string, unknown>;
  }
  function yargs(argv: readonly string[]): Argv;
  export default yargs;
}

declare module "yargs/helpers" {
  export function hideBin(argv: readonly string[]): string[];
}

declare module "papaparse" {
  export interface ParseError {
    message: string;
    row?: number;
  }
  export interface ParseResult<T> {
    data: T[];
    errors: ParseError[];
  }
  export interface ParseConfig {
    skipEmptyLines?: boolean | "greedy";
  }
  const Papa: {
    parse<T>(input: string, config?: ParseConfig): ParseResult<T>;
  };
  export default Papa;
}
