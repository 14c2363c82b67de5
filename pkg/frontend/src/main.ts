// DOM wiring for the playground: an editor plus Build / Simulate /
// Cost-compare actions against the compiler service. At most one request
// per action kind is in flight; responses for edited-away sources are
// dropped by hash comparison in the state layer.

import { ApiError, Client, Mode } from "./api.js";
import { costRows } from "./costview.js";
import { buildGrid, gridToText } from "./grid.js";
import {
  MODES,
  ViewState,
  applyBuild,
  applyCost,
  applySimulate,
  buildIsFresh,
  costIsFresh,
  currentHash,
  initialState,
  simulationInputs,
  validateInputs,
  withMode,
  withSource,
} from "./state.js";

const DEFAULT_SOURCE = `// 2-bit ALU: op selects sum or difference of x1 and x2
module alu(in op(1), out x0(2), in x1(2), in x2(2))
    if (op = 1) then
        x0 ^= (x1 + x2)
    else
        x0 ^= (x1 - x2)
    fi (op = 1)
`;

const client = new Client("");
let state: ViewState = initialState(DEFAULT_SOURCE);
const inflight: Partial<Record<"build" | "simulate" | "cost", boolean>> = {};

function $(id: string): HTMLElement {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element;
}

function setState(next: ViewState): void {
  state = next;
  render();
}

function toast(message: string): void {
  const box = $("toast");
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 4000);
}

async function onBuild(): Promise<void> {
  if (inflight.build) return;
  inflight.build = true;
  const hash = currentHash(state);
  try {
    const response = await client.synthesize(state.source, state.mode);
    setState(applyBuild(state, hash, response));
  } catch (err) {
    if (err instanceof ApiError) toast(err.message);
    else toast(String(err));
  } finally {
    inflight.build = false;
    render();
  }
}

async function onSimulate(): Promise<void> {
  if (inflight.simulate || !buildIsFresh(state)) return;
  const fields = simulationInputs(state);
  const raw: Record<string, string> = {};
  for (const field of fields) {
    const input = document.getElementById(`in-${field.name}`) as HTMLInputElement | null;
    raw[field.name] = input?.value ?? "";
  }
  const { values, problems } = validateInputs(fields, raw);
  renderInputProblems(problems);
  if (!values) return; // inline validation failed; no request sent
  inflight.simulate = true;
  const hash = currentHash(state);
  const oracle = ($("oracle-flag") as HTMLInputElement).checked;
  try {
    const response = await client.simulate(state.source, state.mode, values, oracle);
    setState(applySimulate(state, hash, values, response));
  } catch (err) {
    toast(err instanceof ApiError ? err.message : String(err));
  } finally {
    inflight.simulate = false;
    render();
  }
}

async function onCost(): Promise<void> {
  if (inflight.cost) return;
  inflight.cost = true;
  const hash = currentHash(state);
  try {
    const [costAware, lineAware] = await Promise.all(
      MODES.map((mode) => client.cost(state.source, mode)),
    );
    setState(applyCost(state, hash, { "cost-aware": costAware, "line-aware": lineAware }));
  } catch (err) {
    toast(err instanceof ApiError ? err.message : String(err));
  } finally {
    inflight.cost = false;
    render();
  }
}

// ------------------------------------------------------------------ rendering

function render(): void {
  renderDiagnostics();
  renderStats();
  renderCircuit();
  renderSimulation();
  renderCost();
}

function renderDiagnostics(): void {
  const list = $("diagnostics");
  list.innerHTML = "";
  const editor = $("editor") as HTMLTextAreaElement;
  for (const diag of state.diagnostics) {
    const item = document.createElement("li");
    item.className = diag.severity;
    item.textContent = `${diag.line}:${diag.col}: ${diag.severity}: ${diag.message}`;
    item.addEventListener("click", () => {
      const lines = editor.value.split("\n");
      let offset = 0;
      for (let i = 0; i < diag.line - 1 && i < lines.length; i++) {
        offset += lines[i].length + 1;
      }
      editor.focus();
      editor.setSelectionRange(offset + diag.col - 1, offset + (lines[diag.line - 1]?.length ?? 0));
    });
    list.appendChild(item);
  }
  highlightErrorLines();
}

function highlightErrorLines(): void {
  const overlay = $("editor-overlay");
  const errorLines = new Set(
    state.diagnostics.filter((d) => d.severity === "error").map((d) => d.line),
  );
  const rows = state.source.split("\n").map((text, index) => {
    const cls = errorLines.has(index + 1) ? "err-line" : "";
    return `<span class="${cls}">${escapeHtml(text || " ")}</span>`;
  });
  overlay.innerHTML = rows.join("\n");
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function renderStats(): void {
  const badge = $("stats-stale");
  const panel = $("stats-panel");
  if (!state.build) {
    panel.textContent = "No build yet.";
    badge.hidden = true;
    return;
  }
  badge.hidden = buildIsFresh(state);
  const s = state.build.stats;
  panel.innerHTML = "";
  const rows: [string, string | number][] = [
    ["Program", s.program],
    ["Mode", s.mode],
    ["Lines", s.lines],
    ["Constant lines", s.constants],
    ["Garbage lines", s.garbage],
    ["Gates", s.gates],
    ["Quantum cost", s.quantumCost],
  ];
  for (const [label, value] of rows) {
    const div = document.createElement("div");
    div.className = "stat";
    div.innerHTML = `<span>${label}</span><strong>${escapeHtml(String(value))}</strong>`;
    panel.appendChild(div);
  }
}

function renderCircuit(): void {
  const view = $("circuit");
  if (!state.build?.lines || !state.build.gates) {
    view.textContent = "";
    return;
  }
  const grid = buildGrid(state.build.lines, state.build.gates);
  view.textContent = gridToText(grid).join("\n");
  $("circuit-meta").textContent =
    `${grid.rowLabels.length} lines × ${grid.columns.length} gate columns`;
}

function renderSimulation(): void {
  const form = $("sim-form");
  const button = $("simulate") as HTMLButtonElement;
  const fresh = buildIsFresh(state);
  button.disabled = !fresh;
  $("sim-stale").toggleAttribute("hidden", fresh || !state.build);
  if (!fresh) {
    if (!state.build) form.innerHTML = "";
    renderSimResults();
    return;
  }
  const fields = simulationInputs(state);
  const existing = new Set(
    Array.from(form.querySelectorAll("input[data-signal]"))
      .map((el) => (el as HTMLInputElement).dataset.signal),
  );
  const wanted = new Set(fields.map((f) => f.name));
  if (existing.size !== wanted.size || [...wanted].some((name) => !existing.has(name))) {
    form.innerHTML = "";
    for (const field of fields) {
      const row = document.createElement("label");
      row.innerHTML =
        `<span>${field.name} (${field.width} bit${field.width > 1 ? "s" : ""})</span>` +
        `<input id="in-${field.name}" data-signal="${field.name}" inputmode="numeric" value="0">` +
        `<em id="problem-${field.name}"></em>`;
      form.appendChild(row);
    }
  }
  renderSimResults();
}

function renderInputProblems(problems: Record<string, string>): void {
  for (const field of simulationInputs(state)) {
    const slot = document.getElementById(`problem-${field.name}`);
    if (slot) slot.textContent = problems[field.name] ?? "";
  }
}

function renderSimResults(): void {
  const out = $("sim-results");
  const banner = $("mismatch-banner");
  if (!state.sim || state.sim.hash !== currentHash(state)) {
    out.textContent = "";
    banner.hidden = true;
    return;
  }
  out.textContent = Object.entries(state.sim.outputs)
    .map(([name, value]) => `${name}=${value}`)
    .join("\n");
  const oracle = state.sim.oracle;
  banner.hidden = !(oracle && !oracle.match);
  if (oracle && !oracle.match) {
    $("mismatch-detail").textContent = Object.entries(oracle.outputs)
      .map(([name, value]) => `${name}=${value}`)
      .join(", ");
  }
}

function renderCost(): void {
  const table = $("cost-table");
  const badge = $("cost-stale");
  if (!state.cost) {
    table.innerHTML = "";
    badge.hidden = true;
    return;
  }
  badge.hidden = costIsFresh(state);
  const rows = costRows(state.cost.reports);
  const header = `<tr><th></th>${MODES.map((m) => `<th>${m}</th>`).join("")}</tr>`;
  const body = rows
    .map((row) => {
      const cells = MODES.map((mode) => {
        const errors = state.cost?.errors[mode];
        if (errors) return `<td class="err">${escapeHtml(errors[0]?.message ?? "failed")}</td>`;
        const value = row.values[mode];
        const winner = row.winner === mode ? " class=\"winner\"" : "";
        return `<td${winner}>${value ?? "–"}</td>`;
      }).join("");
      return `<tr><th>${row.label}</th>${cells}</tr>`;
    })
    .join("");
  table.innerHTML = header + body;
}

// ---------------------------------------------------------------------- init

function init(): void {
  const editor = $("editor") as HTMLTextAreaElement;
  editor.value = state.source;
  editor.addEventListener("input", () => {
    setState(withSource(state, editor.value));
  });
  editor.addEventListener("scroll", () => {
    const overlay = $("editor-overlay");
    overlay.scrollTop = editor.scrollTop;
    overlay.scrollLeft = editor.scrollLeft;
  });
  const modeSelect = $("mode") as HTMLSelectElement;
  modeSelect.value = state.mode;
  modeSelect.addEventListener("change", () => {
    setState(withMode(state, modeSelect.value as Mode));
  });
  $("build").addEventListener("click", () => void onBuild());
  $("simulate").addEventListener("click", () => void onSimulate());
  $("cost").addEventListener("click", () => void onCost());
  render();
  void client.health().then((ok) => {
    if (!ok) toast("service unreachable: start it with `syrec serve`");
  });
}

document.addEventListener("DOMContentLoaded", init);
