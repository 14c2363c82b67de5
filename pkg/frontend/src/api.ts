// Typed client for the compiler service. The playground talks to the
// HTTP/JSON API exclusively; every response carries schemaVersion.

export type Mode = "cost-aware" | "line-aware";

export interface Diagnostic {
  severity: "error" | "warning";
  message: string;
  line: number;
  col: number;
  endLine?: number;
  endCol?: number;
}

export interface Stats {
  program: string;
  mode: Mode;
  lines: number;
  constants: number;
  garbage: number;
  gates: number;
  quantumCost: number;
}

export interface LineInfo {
  index: number;
  label: string;
  constant: boolean;
  garbage: boolean;
  input: string | null;
  output: string | null;
}

export interface GateInfo {
  kind: "mct" | "mcf";
  controls: number[];
  targets: number[];
}

export interface SignalInfo {
  name: string;
  kind: "in" | "out" | "inout" | "wire" | "state";
  width: number;
  lines: number[];
}

export interface BaseResponse {
  schemaVersion: number;
  ok: boolean;
  diagnostics: Diagnostic[];
}

export interface SynthesizeResponse extends BaseResponse {
  program?: string;
  mode?: Mode;
  stats?: Stats;
  real?: string;
  lines?: LineInfo[];
  gates?: GateInfo[];
  signals?: SignalInfo[];
}

export interface SimulateResponse extends BaseResponse {
  outputs?: Record<string, number>;
  oracle?: { outputs: Record<string, number>; match: boolean };
}

export interface CostResponse extends BaseResponse {
  report?: Stats;
}

export class ApiError extends Error {
  constructor(message: string, readonly diagnostics: Diagnostic[] = []) {
    super(message);
  }
}

async function post<T extends BaseResponse>(base: string, path: string, body: unknown): Promise<T> {
  let response: Response;
  try {
    response = await fetch(base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  } catch (err) {
    throw new ApiError(`network failure: ${String(err)}`);
  }
  const payload = (await response.json()) as T;
  if (!response.ok && !payload.diagnostics) {
    throw new ApiError(`request failed with status ${response.status}`);
  }
  return payload;
}

export class Client {
  constructor(readonly base: string = "") {}

  parse(source: string): Promise<BaseResponse> {
    return post(this.base, "/api/parse", { source });
  }

  synthesize(source: string, mode: Mode): Promise<SynthesizeResponse> {
    return post(this.base, "/api/synthesize", { source, mode });
  }

  simulate(source: string, mode: Mode, inputs: Record<string, number>,
           oracle = false): Promise<SimulateResponse> {
    return post(this.base, "/api/simulate", { source, mode, inputs, oracle });
  }

  cost(source: string, mode: Mode): Promise<CostResponse> {
    return post(this.base, "/api/cost", { source, mode });
  }

  async health(): Promise<boolean> {
    try {
      const response = await fetch(this.base + "/api/health");
      return response.ok && (await response.json()).ok === true;
    } catch {
      return false;
    }
  }
}
