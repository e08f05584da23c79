/** Fire-weather choropleth: class-colored cell polygons with exact-value hover.

 * A pure view over the FWI payload: switching season/period re-renders from
 * the same payload without touching the session or refetching.
 */

import { riskColor } from "./colors.js";
import {
  seasonPeriodKey,
  type FwiPayload,
  type Period,
  type Season,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const CLASS_LABELS: Record<string, string> = {
  low: "Low",
  medium: "Medium",
  high: "High",
  very_high: "Very High",
  extreme: "Extreme",
  very_extreme: "Very Extreme",
};

function projector(payload: FwiPayload) {
  const lats: number[] = [];
  const lons: number[] = [];
  for (const cell of payload.cells) {
    for (const point of cell.footprint) {
      lats.push(point.latitude);
      lons.push(point.longitude);
    }
  }
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);
  const width = 420;
  const height = 360;
  const pad = 12;
  return (lat: number, lon: number): [number, number] => {
    const x = pad + ((lon - minLon) / (maxLon - minLon || 1)) * (width - 2 * pad);
    const y = pad + ((maxLat - lat) / (maxLat - minLat || 1)) * (height - 2 * pad);
    return [x, y];
  };
}

export function renderFwiLayer(
  container: HTMLElement,
  payload: FwiPayload,
  season: Season,
  period: Period,
): void {
  container.replaceChildren();
  container.classList.add("fwi-layer");

  if (payload.coverage_gap || payload.cells.length === 0) {
    const banner = document.createElement("div");
    banner.className = "banner banner-warning";
    banner.setAttribute("data-role", "no-coverage");
    banner.textContent =
      "No fire-weather coverage at this location; nothing to display.";
    container.append(banner);
    return;
  }

  const key = seasonPeriodKey(season, period);
  const project = projector(payload);

  const tooltip = document.createElement("div");
  tooltip.className = "map-tooltip";
  tooltip.setAttribute("data-role", "fwi-tooltip");
  tooltip.hidden = true;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", "0 0 420 360");
  svg.setAttribute("data-role", "fwi-map");

  for (const cell of payload.cells) {
    const value = cell.values[key];
    if (value === undefined) continue;
    const polygon = document.createElementNS(SVG_NS, "polygon");
    const points = cell.footprint
      .map((p) => project(p.latitude, p.longitude).join(","))
      .join(" ");
    polygon.setAttribute("points", points);
    polygon.setAttribute("fill", riskColor(value));
    polygon.setAttribute("stroke", "#666666");
    polygon.setAttribute("data-cell-id", cell.id);
    polygon.setAttribute("data-value", String(value));
    polygon.classList.add("fwi-cell");
    polygon.addEventListener("mouseenter", () => {
      tooltip.hidden = false;
      tooltip.textContent = String(value);
    });
    polygon.addEventListener("mouseleave", () => {
      tooltip.hidden = true;
      tooltip.textContent = "";
    });
    svg.append(polygon);
  }

  const pin = document.createElementNS(SVG_NS, "circle");
  const [cx, cy] = project(payload.center.latitude, payload.center.longitude);
  pin.setAttribute("cx", String(cx));
  pin.setAttribute("cy", String(cy));
  pin.setAttribute("r", "5");
  pin.setAttribute("class", "location-pin");
  svg.append(pin);

  const legend = document.createElement("div");
  legend.className = "legend";
  for (const [name, label] of Object.entries(CLASS_LABELS)) {
    const item = document.createElement("span");
    item.className = "legend-item";
    const swatch = document.createElement("span");
    swatch.className = "legend-swatch";
    swatch.style.backgroundColor = riskColorByName(name);
    const text = document.createElement("span");
    text.textContent = label;
    item.append(swatch, text);
    legend.append(item);
  }

  container.append(svg, tooltip, legend);
}

function riskColorByName(name: string): string {
  // Legend swatches reuse the ramp without a numeric value.
  const colors: Record<string, string> = {
    low: "#ffffb2",
    medium: "#fed976",
    high: "#feb24c",
    very_high: "#fd8d3c",
    extreme: "#f03b20",
    very_extreme: "#bd0026",
  };
  return colors[name] ?? "#cccccc";
}
