// View state and its pure update logic. Results remember the hash of the
// source they were produced from; anything produced from a different hash
// is stale and must be flagged (or, for simulation, disabled).

import type {
  CostResponse,
  Diagnostic,
  Mode,
  SimulateResponse,
  Stats,
  SynthesizeResponse,
} from "./api.js";
import { sourceHash } from "./hash.js";

export interface BuildResult {
  hash: string;
  mode: Mode;
  stats: Stats;
  lines: SynthesizeResponse["lines"];
  gates: SynthesizeResponse["gates"];
  signals: SynthesizeResponse["signals"];
  real: string;
}

export interface CostPair {
  hash: string;
  reports: Partial<Record<Mode, Stats>>;
  errors: Partial<Record<Mode, Diagnostic[]>>;
}

export interface SimResult {
  hash: string;
  inputs: Record<string, number>;
  outputs: Record<string, number>;
  oracle?: { outputs: Record<string, number>; match: boolean };
}

export interface ViewState {
  source: string;
  mode: Mode;
  diagnostics: Diagnostic[];
  build?: BuildResult;
  cost?: CostPair;
  sim?: SimResult;
}

export const MODES: Mode[] = ["cost-aware", "line-aware"];

export function initialState(source: string): ViewState {
  return { source, mode: "line-aware", diagnostics: [] };
}

export function withSource(state: ViewState, source: string): ViewState {
  return { ...state, source };
}

export function withMode(state: ViewState, mode: Mode): ViewState {
  return { ...state, mode };
}

export function currentHash(state: ViewState): string {
  return sourceHash(state.source);
}

/** Build results are usable only when produced from the current source. */
export function buildIsFresh(state: ViewState): boolean {
  return state.build !== undefined && state.build.hash === currentHash(state);
}

export function costIsFresh(state: ViewState): boolean {
  return state.cost !== undefined && state.cost.hash === currentHash(state);
}

export function simIsFresh(state: ViewState): boolean {
  return state.sim !== undefined && state.sim.hash === currentHash(state);
}

export function applyBuild(state: ViewState, forHash: string,
                           response: SynthesizeResponse): ViewState {
  if (forHash !== currentHash(state)) {
    return state; // superseded by an edit; drop silently
  }
  if (!response.ok || !response.stats) {
    return { ...state, diagnostics: response.diagnostics, build: undefined };
  }
  return {
    ...state,
    diagnostics: response.diagnostics,
    build: {
      hash: forHash,
      mode: response.mode ?? state.mode,
      stats: response.stats,
      lines: response.lines,
      gates: response.gates,
      signals: response.signals,
      real: response.real ?? "",
    },
  };
}

export function applySimulate(state: ViewState, forHash: string,
                              inputs: Record<string, number>,
                              response: SimulateResponse): ViewState {
  if (forHash !== currentHash(state)) {
    return state;
  }
  if (!response.ok || !response.outputs) {
    return { ...state, diagnostics: response.diagnostics, sim: undefined };
  }
  return {
    ...state,
    diagnostics: response.diagnostics,
    sim: { hash: forHash, inputs, outputs: response.outputs, oracle: response.oracle },
  };
}

export function applyCost(state: ViewState, forHash: string,
                          results: Partial<Record<Mode, CostResponse>>): ViewState {
  if (forHash !== currentHash(state)) {
    return state;
  }
  const pair: CostPair = { hash: forHash, reports: {}, errors: {} };
  for (const mode of MODES) {
    const response = results[mode];
    if (!response) continue;
    if (response.ok && response.report) {
      pair.reports[mode] = response.report;
    } else {
      pair.errors[mode] = response.diagnostics; // per-mode failure, other column stays
    }
  }
  return { ...state, cost: pair };
}

/** Input signals of the latest build, in declaration order. */
export function simulationInputs(state: ViewState): { name: string; width: number }[] {
  if (!state.build?.signals) return [];
  return state.build.signals
    .filter((s) => s.kind === "in" || s.kind === "inout" || s.kind === "state")
    .map((s) => ({ name: s.name, width: s.width }));
}

export function validateInputs(fields: { name: string; width: number }[],
                               raw: Record<string, string>): {
  values?: Record<string, number>;
  problems: Record<string, string>;
} {
  const values: Record<string, number> = {};
  const problems: Record<string, string> = {};
  for (const field of fields) {
    const text = (raw[field.name] ?? "").trim();
    if (text === "") {
      problems[field.name] = "required";
      continue;
    }
    const value = Number(text);
    if (!Number.isInteger(value) || value < 0) {
      problems[field.name] = "must be a non-negative integer";
      continue;
    }
    if (value >= 2 ** field.width) {
      problems[field.name] = `must fit ${field.width} bit(s)`;
      continue;
    }
    values[field.name] = value;
  }
  return Object.keys(problems).length ? { problems } : { values, problems };
}
