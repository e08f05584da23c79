/** Shared payload fixtures and a scripted mock of the session API. */

import type {
  ConsoleEvent,
  FwiPayload,
  IncidentPayload,
  MessageResponse,
} from "../src/types.js";

const ALL_KEYS = [
  "winter_historical", "spring_historical", "summer_historical",
  "autumn_historical", "winter_mid_century", "spring_mid_century",
  "summer_mid_century", "autumn_mid_century", "winter_end_century",
  "spring_end_century", "summer_end_century", "autumn_end_century",
];

function cellValues(base: Record<string, number>): Record<string, number> {
  const values: Record<string, number> = {};
  for (const key of ALL_KEYS) values[key] = base[key] ?? 5.0;
  return values;
}

export const FWI_PAYLOAD: FwiPayload = {
  center: { latitude: 37.7935, longitude: -79.9939 },
  radius_km: 36.0,
  cell_ids: ["R040C100", "R040C101"],
  coverage_gap: false,
  summary: {
    cell_count: 2,
    stats: {
      spring_end_century: { mean: 23.82, std: 0.0, risk: "high" },
      spring_historical: { mean: 13.1, std: 0.0, risk: "medium" },
    },
  },
  cells: [
    {
      id: "R040C100",
      footprint: [
        { latitude: 37.7, longitude: -80.1 },
        { latitude: 37.7, longitude: -79.95 },
        { latitude: 37.85, longitude: -79.95 },
        { latitude: 37.85, longitude: -80.1 },
      ],
      values: cellValues({
        spring_end_century: 23.82,
        spring_historical: 13.1,
        winter_historical: 6.98,
      }),
    },
    {
      id: "R040C101",
      footprint: [
        { latitude: 37.7, longitude: -79.95 },
        { latitude: 37.7, longitude: -79.8 },
        { latitude: 37.85, longitude: -79.8 },
        { latitude: 37.85, longitude: -79.95 },
      ],
      values: cellValues({
        spring_end_century: 41.5,
        spring_historical: 8.2,
        winter_historical: 3.4,
      }),
    },
  ],
  period_labels: {
    historical: "historical (1995-2004)",
    mid_century: "mid-century (2045-2054)",
    end_century: "end-of-century (2085-2094)",
  },
};

export const EMPTY_FWI_PAYLOAD: FwiPayload = {
  center: { latitude: 0.0, longitude: -150.0 },
  radius_km: 36.0,
  cell_ids: [],
  coverage_gap: true,
  summary: null,
  cells: [],
};

export const INCIDENT_PAYLOAD: IncidentPayload = {
  center: { latitude: 37.7935, longitude: -79.9939 },
  radius_km: 36.0,
  count: 43,
  incidents: Array.from({ length: 43 }, (_, i) => ({
    location: {
      latitude: 37.7 + (i % 7) * 0.02,
      longitude: -80.1 + (i % 5) * 0.04,
    },
    date: i < 29 ? "2018-07-15" : "2019-05-01",
    name: `Allegheny Fire ${String(i + 1).padStart(3, "0")}`,
    distance_km: 5.0 + (i % 9),
  })),
  trends: {
    yearly: { "2016": 4, "2017": 0, "2018": 29, "2019": 10 },
    monthly: {
      "1": 0, "2": 0, "3": 8, "4": 0, "5": 3, "6": 7,
      "7": 21, "8": 0, "9": 0, "10": 4, "11": 0, "12": 0,
    },
  },
};

export const EMPTY_INCIDENT_PAYLOAD: IncidentPayload = {
  center: { latitude: 0.0, longitude: -150.0 },
  radius_km: 36.0,
  count: 0,
  incidents: [],
  trends: { yearly: {}, monthly: { "1": 0, "7": 0 } },
};

// -- scripted session API mock --------------------------------------------------

function text(content: string): ConsoleEvent {
  return { kind: "text", payload: { text: content } };
}

function stage(from: string, to: string): ConsoleEvent {
  return { kind: "stage", payload: { from, to } };
}

const FWI_REPORT_TEXT = [
  "Fire Weather Index summary across 2 grid cells within 36.0 km.",
  "- Spring, end-of-century (2085-2094): mean 23.82 (High), std 0.0",
  "- Spring, historical (1995-2004): mean 13.1 (Medium), std 0.0",
].join("\n");

export const SESSION_TURNS: Array<{ reply: MessageResponse["events"]; stage: string }> = [
  { reply: [text("What is your professional background?")],
    stage: "profile_collection" },
  { reply: [text("What is your main concern about wildfires?")],
    stage: "profile_collection" },
  { reply: [text("Which location should the analysis focus on?")],
    stage: "profile_collection" },
  { reply: [
      { kind: "map_layer",
        payload: { layer: "location_pin",
                   data: { latitude: 37.7935, longitude: -79.9939 } } },
      text("Pin placed, confirm?"),
    ],
    stage: "profile_collection" },
  { reply: [text("What timeframe matters to you?")],
    stage: "profile_collection" },
  { reply: [text("What scope should the assessment cover?")],
    stage: "profile_collection" },
  { reply: [text("Summary of your checklist; accept or revise."),
            stage("profile_collection", "profile_confirmation")],
    stage: "profile_confirmation" },
  { reply: [stage("profile_confirmation", "planning"),
            text("Proposed plan: fire weather analysis, literature, recommendations."),
            stage("planning", "plan_confirmation")],
    stage: "plan_confirmation" },
  { reply: [
      stage("plan_confirmation", "analysis"),
      { kind: "map_layer",
        payload: { layer: "fwi_query_result",
                   data: { type: "fwi_query_result", value: FWI_PAYLOAD } } },
      { kind: "chart",
        payload: { chart: "fwi_query_result",
                   data: { type: "fwi_query_result", value: FWI_PAYLOAD } } },
      text(FWI_REPORT_TEXT),
      text("Census augmentation is available; say census or proceed."),
    ],
    stage: "analysis" },
  { reply: [text("Literature search results: three studies found.")],
    stage: "analysis" },
  { reply: [text("Recommendations: maintain defensible space.")],
    stage: "analysis" },
];

export interface MockCall {
  path: string;
  body: unknown;
}

export function mockApi(turns = SESSION_TURNS, failures: number[] = []) {
  const calls: MockCall[] = [];
  let turn = 0;
  let messageIndex = 0;
  const fetchImpl = async (input: string, init?: RequestInit): Promise<Response> => {
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    calls.push({ path: input, body });
    const respond = (status: number, payload: unknown) =>
      new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      });
    if (input.endsWith("/sessions")) {
      return respond(200, { version: 1, session_id: "sess-test",
                            stage: "profile_collection" });
    }
    if (input.includes("/messages")) {
      messageIndex += 1;
      if (failures.includes(messageIndex)) {
        return respond(502, {
          version: 1,
          error: { code: "upstream", message: "provider outage",
                   retryable: true },
        });
      }
      const scripted = turns[turn];
      turn += 1;
      return respond(200, { version: 1, session_id: "sess-test",
                            stage: scripted.stage, events: scripted.reply });
    }
    return respond(404, { version: 1,
                          error: { code: "not_found", message: "nope",
                                   retryable: false } });
  };
  return { fetchImpl, calls };
}
