import { beforeEach, describe, expect, it } from "vitest";

import { renderCensusLayer } from "../src/censusLayer.js";
import type { CensusPayload } from "../src/types.js";

import { assertShownNumbersCovered, collectPayloadNumbers } from "./scrape.js";

const CENSUS_PAYLOAD: CensusPayload = {
  center: { latitude: 37.7935, longitude: -79.9939 },
  radius_km: 36.0,
  totals: {
    total_population: 2229,
    below_poverty: 365,
    below_half_poverty: 156,
    housing_units: 1058,
  },
  block_count: 2,
  blocks: [
    {
      geoid: "511630301001",
      geometry: [
        { latitude: 37.75, longitude: -80.04 },
        { latitude: 37.75, longitude: -79.95 },
        { latitude: 37.84, longitude: -79.95 },
        { latitude: 37.84, longitude: -80.04 },
      ],
      total_population: 1287,
      below_poverty: 214,
      below_half_poverty: 96,
      housing_units: 603,
    },
    {
      geoid: "511630301002",
      geometry: [
        { latitude: 37.84, longitude: -80.04 },
        { latitude: 37.84, longitude: -79.95 },
        { latitude: 37.93, longitude: -79.95 },
        { latitude: 37.93, longitude: -80.04 },
      ],
      total_population: 942,
      below_poverty: 151,
      below_half_poverty: 60,
      housing_units: 455,
    },
  ],
};

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.replaceChildren(container);
});

describe("census overlay", () => {
  it("renders one polygon per block group with hover counts", () => {
    renderCensusLayer(container, CENSUS_PAYLOAD);
    const blocks = container.querySelectorAll(".census-block");
    expect(blocks).toHaveLength(2);
    blocks[0].dispatchEvent(new Event("mouseenter"));
    const tooltip = container.querySelector<HTMLElement>(
      '[data-role="census-tooltip"]')!;
    expect(tooltip.hidden).toBe(false);
    expect(tooltip.textContent).toContain("1287");
    expect(tooltip.textContent).toContain("214");
    expect(tooltip.textContent).toContain("603");
  });

  it("shows no numeric absent from the payload", () => {
    renderCensusLayer(container, CENSUS_PAYLOAD);
    for (const block of container.querySelectorAll(".census-block")) {
      block.dispatchEvent(new Event("mouseenter"));
    }
    assertShownNumbersCovered(container, collectPayloadNumbers(CENSUS_PAYLOAD));
  });

  it("renders a banner when nothing intersects", () => {
    renderCensusLayer(container, {
      ...CENSUS_PAYLOAD, block_count: 0, blocks: [],
      totals: { total_population: 0, below_poverty: 0,
                below_half_poverty: 0, housing_units: 0 },
    });
    expect(container.querySelector('[data-role="no-census"]')).not.toBeNull();
    expect(container.querySelectorAll(".census-block")).toHaveLength(0);
  });
});
