/** Incident pins and the yearly/monthly trend line charts.

 * Charts render values straight from the payload; nothing is recomputed
 * client-side beyond positioning.
 */

import type { IncidentPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const MONTH_LABELS = [
  "Jan", "Feb", "Mar", "Apr", "May", "Jun",
  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

interface ChartPoint {
  label: string;
  value: number;
}

function lineChart(points: ChartPoint[], title: string, role: string): SVGSVGElement {
  const width = 440;
  const height = 200;
  const padX = 30;
  const padY = 28;
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("data-role", role);

  const heading = document.createElementNS(SVG_NS, "text");
  heading.setAttribute("x", String(width / 2));
  heading.setAttribute("y", "14");
  heading.setAttribute("text-anchor", "middle");
  heading.setAttribute("class", "chart-title");
  heading.textContent = title;
  svg.append(heading);

  if (points.length === 0) {
    return svg;
  }
  const maxValue = Math.max(...points.map((p) => p.value), 1);
  const stepX = points.length > 1
    ? (width - 2 * padX) / (points.length - 1)
    : 0;
  const coords = points.map((point, index) => {
    const x = padX + index * stepX;
    const y = height - padY
      - (point.value / maxValue) * (height - 2 * padY - 10);
    return { x, y, point };
  });

  const polyline = document.createElementNS(SVG_NS, "polyline");
  polyline.setAttribute(
    "points", coords.map(({ x, y }) => `${x},${y}`).join(" "));
  polyline.setAttribute("class", "chart-line");
  polyline.setAttribute("fill", "none");
  polyline.setAttribute("stroke", "#d7301f");
  svg.append(polyline);

  for (const { x, y, point } of coords) {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(x));
    dot.setAttribute("cy", String(y));
    dot.setAttribute("r", "3");
    dot.setAttribute("fill", "#d7301f");
    dot.setAttribute("data-count", String(point.value));
    svg.append(dot);

    const valueLabel = document.createElementNS(SVG_NS, "text");
    valueLabel.setAttribute("x", String(x));
    valueLabel.setAttribute("y", String(y - 7));
    valueLabel.setAttribute("text-anchor", "middle");
    valueLabel.setAttribute("class", "chart-value");
    valueLabel.textContent = String(point.value);
    svg.append(valueLabel);

    const axisLabel = document.createElementNS(SVG_NS, "text");
    axisLabel.setAttribute("x", String(x));
    axisLabel.setAttribute("y", String(height - 8));
    axisLabel.setAttribute("text-anchor", "middle");
    axisLabel.setAttribute("class", "chart-axis");
    axisLabel.textContent = point.label;
    svg.append(axisLabel);
  }
  return svg;
}

export function renderIncidents(container: HTMLElement,
                                payload: IncidentPayload): void {
  container.replaceChildren();
  container.classList.add("incidents-panel");

  if (payload.count === 0) {
    const banner = document.createElement("div");
    banner.className = "banner";
    banner.setAttribute("data-role", "no-incidents");
    banner.textContent = "No recorded incidents in this area.";
    container.append(banner);
    const empty = lineChart([], "Incidents per year", "yearly-chart");
    container.append(empty);
    return;
  }

  // Pin layer: incident markers positioned within the bounding box.
  const lats = payload.incidents.map((i) => i.location.latitude);
  const lons = payload.incidents.map((i) => i.location.longitude);
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);
  const map = document.createElementNS(SVG_NS, "svg");
  map.setAttribute("viewBox", "0 0 420 300");
  map.setAttribute("data-role", "incident-map");
  for (const incident of payload.incidents) {
    const x = 12 + ((incident.location.longitude - minLon)
      / (maxLon - minLon || 1)) * 396;
    const y = 12 + ((maxLat - incident.location.latitude)
      / (maxLat - minLat || 1)) * 276;
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(x));
    dot.setAttribute("cy", String(y));
    dot.setAttribute("r", "3");
    dot.setAttribute("class", "incident-pin");
    dot.setAttribute("fill", "#d7301f");
    dot.setAttribute("data-name", incident.name);
    map.append(dot);
  }
  container.append(map);

  const yearly = Object.entries(payload.trends.yearly)
    .map(([year, value]) => ({ label: year, value }))
    .sort((a, b) => Number(a.label) - Number(b.label));
  container.append(lineChart(yearly, "Incidents per year", "yearly-chart"));

  const monthly = Object.entries(payload.trends.monthly)
    .map(([month, value]) => ({
      label: MONTH_LABELS[Number(month) - 1] ?? month,
      value,
    }));
  container.append(lineChart(monthly, "Incidents per month", "monthly-chart"));
}
