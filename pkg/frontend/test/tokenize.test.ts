import { describe, expect, it } from "vitest";

import { tokenSpans, unitId } from "../src/tokenize.js";

describe("tokenSpans", () => {
  it("mirrors the service tokenizer on the reference sentence", () => {
    const spans = tokenSpans("Bus 4 minutes late!");
    expect(spans.map((s) => [s.token, s.position])).toEqual([
      ["bus", 0], ["4", 1], ["minutes", 2], ["late", 3],
    ]);
  });

  it("returns nothing for empty or punctuation-only text", () => {
    expect(tokenSpans("")).toEqual([]);
    expect(tokenSpans("?!--")).toEqual([]);
  });

  it("keeps duplicate tokens at distinct positions", () => {
    const ids = tokenSpans("stop--stop").map(unitId);
    expect(ids).toEqual(["stop@0", "stop@1"]);
  });

  it("records character offsets into the original text", () => {
    const spans = tokenSpans("The 7 was packed");
    expect(spans[1]).toMatchObject({ token: "7", start: 4, end: 5 });
    // offsets index the raw string, so slicing reproduces the surface form
    expect("The 7 was packed".slice(spans[0].start, spans[0].end)).toBe("The");
  });
});
