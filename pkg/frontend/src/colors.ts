/** Six-class color ramp (yellow to red), matching the server's report path. */

import type { RiskClass } from "./types.js";

export const RISK_COLORS: Record<RiskClass, string> = {
  low: "#ffffb2",
  medium: "#fed976",
  high: "#feb24c",
  very_high: "#fd8d3c",
  extreme: "#f03b20",
  very_extreme: "#bd0026",
};

// Class bands mirror the service classification (upper bound exclusive).
const THRESHOLDS: Array<[number, RiskClass]> = [
  [9, "low"],
  [21, "medium"],
  [34, "high"],
  [39, "very_high"],
  [53, "extreme"],
  [Infinity, "very_extreme"],
];

export function classifyFwi(value: number): RiskClass {
  if (!Number.isFinite(value) || value < 0) {
    throw new Error(`FWI value out of range: ${value}`);
  }
  for (const [upper, risk] of THRESHOLDS) {
    if (value < upper) return risk;
  }
  return "very_extreme";
}

export function riskColor(value: number): string {
  return RISK_COLORS[classifyFwi(value)];
}
