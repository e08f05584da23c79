import { beforeEach, describe, expect, it } from "vitest";

import { renderIncidents } from "../src/incidents.js";

import { EMPTY_INCIDENT_PAYLOAD, INCIDENT_PAYLOAD } from "./fixtures.js";
import {
  assertShownNumbersCovered,
  collectPayloadNumbers,
  extractNumericTokens,
} from "./scrape.js";

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.replaceChildren(container);
});

function chartCounts(role: string): number[] {
  const chart = container.querySelector(`[data-role="${role}"]`)!;
  return [...chart.querySelectorAll("circle[data-count]")]
    .map((dot) => Number(dot.getAttribute("data-count")));
}

describe("incident panel", () => {
  it("renders one pin per incident", () => {
    renderIncidents(container, INCIDENT_PAYLOAD);
    const pins = container.querySelectorAll(".incident-pin");
    expect(pins).toHaveLength(INCIDENT_PAYLOAD.count);
  });

  it("yearly chart peaks at 29 in 2018", () => {
    renderIncidents(container, INCIDENT_PAYLOAD);
    const chart = container.querySelector('[data-role="yearly-chart"]')!;
    const labels = [...chart.querySelectorAll("text.chart-axis")]
      .map((t) => t.textContent);
    const values = chartCounts("yearly-chart");
    expect(labels).toEqual(["2016", "2017", "2018", "2019"]);
    expect(Math.max(...values)).toBe(29);
    expect(values[labels.indexOf("2018")]).toBe(29);
  });

  it("chart totals equal the payload counts", () => {
    renderIncidents(container, INCIDENT_PAYLOAD);
    const yearlyTotal = chartCounts("yearly-chart").reduce((a, b) => a + b, 0);
    const monthlyTotal = chartCounts("monthly-chart").reduce((a, b) => a + b, 0);
    expect(yearlyTotal).toBe(INCIDENT_PAYLOAD.count);
    expect(monthlyTotal).toBe(INCIDENT_PAYLOAD.count);
  });

  it("monthly labels are month names, July carries 21", () => {
    renderIncidents(container, INCIDENT_PAYLOAD);
    const chart = container.querySelector('[data-role="monthly-chart"]')!;
    const labels = [...chart.querySelectorAll("text.chart-axis")]
      .map((t) => t.textContent);
    expect(labels[6]).toBe("Jul");
    expect(chartCounts("monthly-chart")[6]).toBe(21);
  });

  it("empty payload renders empty axes and no pins", () => {
    renderIncidents(container, EMPTY_INCIDENT_PAYLOAD);
    expect(container.querySelectorAll(".incident-pin")).toHaveLength(0);
    expect(container.querySelector('[data-role="no-incidents"]')).not.toBeNull();
    const chart = container.querySelector('[data-role="yearly-chart"]')!;
    expect(extractNumericTokens(chart.textContent ?? "")).toEqual([]);
  });

  it("shows no numeric that is absent from the payload", () => {
    renderIncidents(container, INCIDENT_PAYLOAD);
    assertShownNumbersCovered(container, collectPayloadNumbers(INCIDENT_PAYLOAD));
  });
});
