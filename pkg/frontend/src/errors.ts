/** A figure input path that does not exist on disk. */
export class MissingInput extends Error {
  constructor(path: string) {
    super(`missing input: ${path}`);
    this.name = "MissingInput";
  }
}

/** A CSV whose header or cells do not match the kind's expected schema. */
export class SchemaMismatch extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "SchemaMismatch";
  }
}
