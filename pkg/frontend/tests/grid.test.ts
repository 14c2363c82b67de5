import { describe, expect, it } from "vitest";

import type { GateInfo, LineInfo } from "../src/api.js";
import { buildGrid, gridToText } from "../src/grid.js";

function line(index: number, label: string, extra: Partial<LineInfo> = {}): LineInfo {
  return { index, label, constant: false, garbage: false, input: null, output: null, ...extra };
}

describe("circuit grid", () => {
  it("produces one column per gate and one row per line", () => {
    const lines = [line(0, "a"), line(1, "b"), line(2, "c")];
    const gates: GateInfo[] = [
      { kind: "mct", controls: [0], targets: [1] },
      { kind: "mct", controls: [], targets: [2] },
      { kind: "mcf", controls: [0], targets: [1, 2] },
    ];
    const grid = buildGrid(lines, gates);
    expect(grid.rowLabels).toEqual(["a", "b", "c"]);
    expect(grid.columns).toHaveLength(gates.length);   // 1:1 with the payload
  });

  it("places controls, targets, and connectors", () => {
    const lines = [line(0, "a"), line(1, "b"), line(2, "c")];
    const gates: GateInfo[] = [{ kind: "mct", controls: [0], targets: [2] }];
    const [column] = buildGrid(lines, gates).columns;
    expect(column.cells.map((c) => c.glyph)).toEqual(["control", "connector", "target"]);
  });

  it("uses swap glyphs for fredkin targets", () => {
    const lines = [line(0, "a"), line(1, "b")];
    const gates: GateInfo[] = [{ kind: "mcf", controls: [], targets: [0, 1] }];
    const [column] = buildGrid(lines, gates).columns;
    expect(column.cells.map((c) => c.glyph)).toEqual(["swap", "swap"]);
  });

  it("classifies rows by their metadata", () => {
    const lines = [
      line(0, "op.0", { input: "op.0" }),
      line(1, "x0.0", { output: "x0.0" }),
      line(2, "s.0", { input: "s.0", output: "s.0" }),
      line(3, "const_0", { constant: true }),
      line(4, "w.0"),
    ];
    const grid = buildGrid(lines, []);
    expect(grid.rowClasses).toEqual(["input", "output", "both", "constant", "internal"]);
  });

  it("renders fixed-width text rows", () => {
    const lines = [line(0, "op.0"), line(1, "x0.0")];
    const gates: GateInfo[] = [{ kind: "mct", controls: [0], targets: [1] }];
    const text = gridToText(buildGrid(lines, gates));
    expect(text).toEqual(["op.0 ─●─", "x0.0 ─⊕─"]);
  });
});
