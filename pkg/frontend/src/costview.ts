// Cost-comparison table model: both modes side by side, the smaller value
// of each row highlighted — lines favor one strategy, gates the other.

import type { Mode, Stats } from "./api.js";

export interface CostRow {
  metric: "lines" | "constants" | "gates" | "quantumCost";
  label: string;
  values: Partial<Record<Mode, number>>;
  winner?: Mode; // smaller value; undefined on ties or missing data
}

const METRICS: { metric: CostRow["metric"]; label: string }[] = [
  { metric: "lines", label: "Lines" },
  { metric: "constants", label: "Constant lines" },
  { metric: "gates", label: "Gates" },
  { metric: "quantumCost", label: "Quantum cost" },
];

export function costRows(reports: Partial<Record<Mode, Stats>>): CostRow[] {
  return METRICS.map(({ metric, label }) => {
    const costAware = reports["cost-aware"]?.[metric];
    const lineAware = reports["line-aware"]?.[metric];
    const row: CostRow = { metric, label, values: {} };
    if (costAware !== undefined) row.values["cost-aware"] = costAware;
    if (lineAware !== undefined) row.values["line-aware"] = lineAware;
    if (costAware !== undefined && lineAware !== undefined && costAware !== lineAware) {
      row.winner = costAware < lineAware ? "cost-aware" : "line-aware";
    }
    return row;
  });
}
