import { describe, expect, it } from "vitest";

import type { Stats } from "../src/api.js";
import { costRows } from "../src/costview.js";

function stats(mode: "cost-aware" | "line-aware", overrides: Partial<Stats>): Stats {
  return {
    program: "alu", mode,
    lines: 0, constants: 0, garbage: 0, gates: 0, quantumCost: 0,
    ...overrides,
  };
}

describe("cost comparison", () => {
  it("highlights the smaller value per row, inverting between lines and gates", () => {
    const rows = costRows({
      "cost-aware": stats("cost-aware", { lines: 11, constants: 4, gates: 16, quantumCost: 40 }),
      "line-aware": stats("line-aware", { lines: 7, constants: 0, gates: 18, quantumCost: 50 }),
    });
    const byMetric = Object.fromEntries(rows.map((r) => [r.metric, r]));
    expect(byMetric.lines.winner).toBe("line-aware");
    expect(byMetric.constants.winner).toBe("line-aware");
    expect(byMetric.gates.winner).toBe("cost-aware");
    expect(byMetric.quantumCost.winner).toBe("cost-aware");
  });

  it("declares no winner on ties", () => {
    const rows = costRows({
      "cost-aware": stats("cost-aware", { lines: 2, gates: 1, quantumCost: 1 }),
      "line-aware": stats("line-aware", { lines: 2, gates: 1, quantumCost: 1 }),
    });
    expect(rows.every((r) => r.winner === undefined)).toBe(true);
  });

  it("leaves missing columns blank without hiding the other", () => {
    const rows = costRows({
      "cost-aware": stats("cost-aware", { lines: 11 }),
    });
    const linesRow = rows.find((r) => r.metric === "lines")!;
    expect(linesRow.values["cost-aware"]).toBe(11);
    expect(linesRow.values["line-aware"]).toBeUndefined();
    expect(linesRow.winner).toBeUndefined();
  });
});
