/** Census block-group overlay: shaded polygons with exact-count hover. */

import type { CensusPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const SHADES = ["#fee8c8", "#fdbb84", "#e34a33", "#b30000"];

function shade(block: { below_poverty: number; total_population: number }): string {
  const ratio = block.total_population
    ? block.below_poverty / block.total_population
    : 0;
  const bucket = Math.min(SHADES.length - 1, Math.floor(ratio * 2 * SHADES.length));
  return SHADES[bucket];
}

export function renderCensusLayer(container: HTMLElement,
                                  payload: CensusPayload): void {
  container.replaceChildren();
  container.classList.add("census-layer");

  if (payload.block_count === 0) {
    const banner = document.createElement("div");
    banner.className = "banner";
    banner.setAttribute("data-role", "no-census");
    banner.textContent = "No census block groups intersect this area.";
    container.append(banner);
    return;
  }

  const lats = payload.blocks.flatMap((b) => b.geometry.map((p) => p.latitude));
  const lons = payload.blocks.flatMap((b) => b.geometry.map((p) => p.longitude));
  const minLat = Math.min(...lats);
  const maxLat = Math.max(...lats);
  const minLon = Math.min(...lons);
  const maxLon = Math.max(...lons);

  const tooltip = document.createElement("div");
  tooltip.className = "map-tooltip";
  tooltip.setAttribute("data-role", "census-tooltip");
  tooltip.hidden = true;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", "0 0 420 320");
  svg.setAttribute("data-role", "census-map");

  for (const block of payload.blocks) {
    const polygon = document.createElementNS(SVG_NS, "polygon");
    const points = block.geometry
      .map((p) => {
        const x = 12 + ((p.longitude - minLon) / (maxLon - minLon || 1)) * 396;
        const y = 12 + ((maxLat - p.latitude) / (maxLat - minLat || 1)) * 296;
        return `${x},${y}`;
      })
      .join(" ");
    polygon.setAttribute("points", points);
    polygon.setAttribute("fill", shade(block));
    polygon.setAttribute("stroke", "#555555");
    polygon.setAttribute("data-geoid", block.geoid);
    polygon.classList.add("census-block");
    polygon.addEventListener("mouseenter", () => {
      tooltip.hidden = false;
      tooltip.textContent =
        `population ${block.total_population}, ` +
        `below poverty ${block.below_poverty}, ` +
        `housing units ${block.housing_units}`;
    });
    polygon.addEventListener("mouseleave", () => {
      tooltip.hidden = true;
      tooltip.textContent = "";
    });
    svg.append(polygon);
  }

  container.append(svg, tooltip);
}
