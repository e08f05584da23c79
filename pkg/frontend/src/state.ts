/** View state: selections are enum-closed and round-trip through the URL. */

import { PERIODS, SEASONS, type Period, type Season } from "./types.js";

export type LayerName = "fwi" | "incidents" | "census" | "pin";

const LAYERS: readonly LayerName[] = ["fwi", "incidents", "census", "pin"];

export interface ViewState {
  sessionId: string | null;
  season: Season;
  period: Period;
  layers: Set<LayerName>;
  hover: string | null;
}

export function defaultViewState(): ViewState {
  return {
    sessionId: null,
    season: "spring",
    period: "end_century",
    layers: new Set<LayerName>(["fwi", "incidents", "pin"]),
    hover: null,
  };
}

export function toQuery(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.sessionId) params.set("session", state.sessionId);
  params.set("season", state.season);
  params.set("period", state.period);
  params.set("layers", [...state.layers].sort().join(","));
  return params.toString();
}

export function fromQuery(query: string): ViewState {
  const params = new URLSearchParams(query);
  const state = defaultViewState();
  const session = params.get("session");
  if (session) state.sessionId = session;
  const season = params.get("season");
  if (season && (SEASONS as readonly string[]).includes(season)) {
    state.season = season as Season;
  }
  const period = params.get("period");
  if (period && (PERIODS as readonly string[]).includes(period)) {
    state.period = period as Period;
  }
  const layers = params.get("layers");
  if (layers !== null) {
    state.layers = new Set(
      layers
        .split(",")
        .filter((name): name is LayerName =>
          (LAYERS as readonly string[]).includes(name)),
    );
  }
  return state;
}

/** Reflect the current selections into the address bar (shareable view). */
export function syncUrl(state: ViewState): void {
  const query = toQuery(state);
  history.replaceState(null, "", `${location.pathname}?${query}`);
}
