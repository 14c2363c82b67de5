// Schematic circuit model: one row per line, one column per gate.
// Glyphs: '●' control, '⊕' MCT target, '×' MCF target, '│' the vertical
// connector between a gate's topmost and bottommost touched lines, '─'
// plain wire. Rendering fidelity is structural, not typographic.

import type { GateInfo, LineInfo } from "./api.js";

export interface GridCell {
  glyph: "wire" | "control" | "target" | "swap" | "connector";
}

export interface GridColumn {
  gate: GateInfo;
  cells: GridCell[]; // one per line
}

export interface CircuitGrid {
  rowLabels: string[];
  rowClasses: ("input" | "output" | "both" | "constant" | "internal")[];
  columns: GridColumn[];
}

const GLYPH_TEXT: Record<GridCell["glyph"], string> = {
  wire: "─",
  control: "●",
  target: "⊕",
  swap: "×",
  connector: "│",
};

function rowClass(line: LineInfo): CircuitGrid["rowClasses"][number] {
  if (line.input && line.output) return "both";
  if (line.input) return "input";
  if (line.output) return "output";
  if (line.constant) return "constant";
  return "internal";
}

export function buildGrid(lines: LineInfo[], gates: GateInfo[]): CircuitGrid {
  const columns: GridColumn[] = gates.map((gate) => {
    const cells: GridCell[] = lines.map(() => ({ glyph: "wire" }));
    const touched = [...gate.controls, ...gate.targets];
    const top = Math.min(...touched);
    const bottom = Math.max(...touched);
    for (let row = top + 1; row < bottom; row++) {
      cells[row] = { glyph: "connector" };
    }
    for (const control of gate.controls) {
      cells[control] = { glyph: "control" };
    }
    for (const target of gate.targets) {
      cells[target] = { glyph: gate.kind === "mct" ? "target" : "swap" };
    }
    return { gate, cells };
  });
  return {
    rowLabels: lines.map((line) => line.label),
    rowClasses: lines.map(rowClass),
    columns,
  };
}

/** Plain-text rendering, one string per line row. */
export function gridToText(grid: CircuitGrid): string[] {
  const width = Math.max(0, ...grid.rowLabels.map((l) => l.length));
  return grid.rowLabels.map((label, row) => {
    const cells = grid.columns.map((col) => GLYPH_TEXT[col.cells[row].glyph]).join("─");
    return `${label.padEnd(width)} ─${cells}─`;
  });
}
