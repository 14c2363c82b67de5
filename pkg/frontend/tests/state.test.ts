import { describe, expect, it } from "vitest";

import type { SimulateResponse, SynthesizeResponse } from "../src/api.js";
import {
  applyBuild,
  applyCost,
  applySimulate,
  buildIsFresh,
  currentHash,
  initialState,
  simulationInputs,
  validateInputs,
  withSource,
} from "../src/state.js";

const okBuild: SynthesizeResponse = {
  schemaVersion: 1,
  ok: true,
  diagnostics: [],
  mode: "line-aware",
  stats: {
    program: "alu", mode: "line-aware",
    lines: 7, constants: 0, garbage: 0, gates: 18, quantumCost: 50,
  },
  lines: [],
  gates: [],
  signals: [
    { name: "op", kind: "in", width: 1, lines: [0] },
    { name: "x0", kind: "out", width: 2, lines: [1, 2] },
    { name: "x1", kind: "in", width: 2, lines: [3, 4] },
  ],
  real: ".version 2.0",
};

describe("build staleness", () => {
  it("accepts a build for the current source", () => {
    const state = initialState("module a");
    const next = applyBuild(state, currentHash(state), okBuild);
    expect(next.build?.stats.lines).toBe(7);
    expect(buildIsFresh(next)).toBe(true);
  });

  it("drops a build whose source was edited away", () => {
    const state = initialState("module a");
    const staleHash = currentHash(state);
    const edited = withSource(state, "module b");
    const next = applyBuild(edited, staleHash, okBuild);
    expect(next.build).toBeUndefined();
  });

  it("marks an existing build stale after an edit", () => {
    const state = initialState("module a");
    const built = applyBuild(state, currentHash(state), okBuild);
    const edited = withSource(built, "module a // edited");
    expect(edited.build).toBeDefined();
    expect(buildIsFresh(edited)).toBe(false);
  });

  it("clears the build and keeps diagnostics on failure", () => {
    const state = initialState("module a");
    const failed: SynthesizeResponse = {
      schemaVersion: 1,
      ok: false,
      diagnostics: [{ severity: "error", message: "boom", line: 1, col: 2 }],
    };
    const next = applyBuild(state, currentHash(state), failed);
    expect(next.build).toBeUndefined();
    expect(next.diagnostics[0].message).toBe("boom");
  });
});

describe("simulation state", () => {
  it("derives the input form from the binding, inputs only", () => {
    const state = applyBuild(initialState("m"), currentHash(initialState("m")), okBuild);
    expect(simulationInputs(state)).toEqual([
      { name: "op", width: 1 },
      { name: "x1", width: 2 },
    ]);
  });

  it("stores outputs together with the oracle verdict", () => {
    const state = initialState("m");
    const response: SimulateResponse = {
      schemaVersion: 1, ok: true, diagnostics: [],
      outputs: { x0: 3 },
      oracle: { outputs: { x0: 2 }, match: false },
    };
    const next = applySimulate(state, currentHash(state), { op: 1 }, response);
    expect(next.sim?.outputs).toEqual({ x0: 3 });
    expect(next.sim?.oracle?.match).toBe(false);
  });
});

describe("input validation", () => {
  const fields = [{ name: "op", width: 1 }, { name: "x1", width: 2 }];

  it("accepts in-range values", () => {
    const { values, problems } = validateInputs(fields, { op: "1", x1: "3" });
    expect(values).toEqual({ op: 1, x1: 3 });
    expect(problems).toEqual({});
  });

  it("flags unfilled and oversized inputs without values", () => {
    const { values, problems } = validateInputs(fields, { op: "", x1: "4" });
    expect(values).toBeUndefined();
    expect(problems.op).toBe("required");
    expect(problems.x1).toContain("2 bit");
  });

  it("rejects non-integers", () => {
    const { problems } = validateInputs(fields, { op: "x", x1: "1.5" });
    expect(Object.keys(problems)).toEqual(["op", "x1"]);
  });
});

describe("cost state", () => {
  it("keeps one column when the other mode fails", () => {
    const state = initialState("m");
    const next = applyCost(state, currentHash(state), {
      "cost-aware": {
        schemaVersion: 1, ok: true, diagnostics: [],
        report: {
          program: "m", mode: "cost-aware",
          lines: 11, constants: 4, garbage: 4, gates: 16, quantumCost: 40,
        },
      },
      "line-aware": {
        schemaVersion: 1, ok: false,
        diagnostics: [{ severity: "error", message: "nope", line: 1, col: 1 }],
      },
    });
    expect(next.cost?.reports["cost-aware"]?.lines).toBe(11);
    expect(next.cost?.reports["line-aware"]).toBeUndefined();
    expect(next.cost?.errors["line-aware"]?.[0].message).toBe("nope");
  });
});
