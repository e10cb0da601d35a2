/** Parser for the experimental-series CSV format.
 *
 * Header line "time,value"; one pair per row; blank lines and lines starting
 * with '#' skipped; LF or CRLF.  Errors carry the 1-based line number.
 */

export interface DataSeries {
  times: number[];
  values: number[];
  label: string;
}

export class CsvError extends Error {
  readonly line: number;
  constructor(line: number, message: string) {
    super(`line ${line}: ${message}`);
    this.line = line;
  }
}

export function parseSeriesCsv(text: string, label = "data"): DataSeries {
  const times: number[] = [];
  const values: number[] = [];
  let headerSeen = false;
  const lines = text.split(/\r\n|\n/);
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    const lineno = i + 1;
    if (line === "" || line.startsWith("#")) continue;
    if (!headerSeen) {
      const cols = line.split(",").map((c) => c.trim().toLowerCase());
      if (cols.length !== 2 || cols[0] !== "time" || cols[1] !== "value") {
        throw new CsvError(lineno, `expected header "time,value", got "${line}"`);
      }
      headerSeen = true;
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== 2) {
      throw new CsvError(lineno, `expected "time,value" pair, got "${line}"`);
    }
    const t = Number(parts[0]);
    const v = Number(parts[1]);
    if (!Number.isFinite(t) || !Number.isFinite(v)) {
      throw new CsvError(lineno, `not numeric: "${line}"`);
    }
    times.push(t);
    values.push(v);
  }
  if (!headerSeen) {
    throw new CsvError(1, 'missing "time,value" header');
  }
  if (times.length < 2) {
    throw new CsvError(lines.length, "series needs at least 2 points");
  }
  for (let i = 1; i < times.length; i++) {
    if (times[i] <= times[i - 1]) {
      throw new CsvError(1, "times must be strictly increasing");
    }
  }
  return { times, values, label };
}
