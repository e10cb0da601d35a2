import { describe, expect, it } from "vitest";

import { CsvError, parseSeriesCsv } from "../src/csv";
import { TABLE2_CSV } from "./helpers";

describe("parseSeriesCsv", () => {
  it("parses the wheat-dough table", () => {
    const s = parseSeriesCsv(TABLE2_CSV);
    expect(s.times).toHaveLength(12);
    expect(s.times[0]).toBe(0);
    expect(s.values[0]).toBe(710);
    expect(s.times[11]).toBe(20);
    expect(s.values[11]).toBe(280);
  });

  it("accepts comments, blank lines and CRLF", () => {
    const s = parseSeriesCsv("# c\r\n\r\ntime,value\r\n0,1\r\n1,2\r\n");
    expect(s.times).toEqual([0, 1]);
  });

  it("rejects a missing header", () => {
    expect(() => parseSeriesCsv("0,1\n1,2\n")).toThrow(CsvError);
  });

  it("rejects short series", () => {
    expect(() => parseSeriesCsv("time,value\n0,1\n")).toThrow(/at least 2/);
  });

  it("rejects non-increasing times", () => {
    expect(() => parseSeriesCsv("time,value\n1,5\n1,6\n")).toThrow(/strictly increasing/);
  });

  it("names the offending line", () => {
    try {
      parseSeriesCsv("time,value\n0,1\nx,y\n");
      throw new Error("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(CsvError);
      expect((err as CsvError).line).toBe(3);
    }
  });
});
