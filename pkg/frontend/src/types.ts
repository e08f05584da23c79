/** Payload typings mirroring the service's canonical JSON bodies. */

export type Season = "winter" | "spring" | "summer" | "autumn";
export type Period = "historical" | "mid_century" | "end_century";
export type RiskClass =
  | "low"
  | "medium"
  | "high"
  | "very_high"
  | "extreme"
  | "very_extreme";

export const SEASONS: readonly Season[] = ["winter", "spring", "summer", "autumn"];
export const PERIODS: readonly Period[] = ["historical", "mid_century", "end_century"];

export interface GeoPointPayload {
  latitude: number;
  longitude: number;
}

export interface SeasonPeriodStat {
  mean: number;
  std: number;
  risk: RiskClass;
}

export interface FwiCellPayload {
  id: string;
  footprint: GeoPointPayload[];
  values: Record<string, number>; // "{season}_{period}" -> value
}

export interface FwiPayload {
  center: GeoPointPayload;
  radius_km: number;
  cell_ids: string[];
  coverage_gap: boolean;
  summary: { cell_count: number; stats: Record<string, SeasonPeriodStat> } | null;
  cells: FwiCellPayload[];
  period_labels?: Record<string, string>;
}

export interface IncidentRow {
  location: GeoPointPayload;
  date: string;
  name: string;
  distance_km: number;
}

export interface IncidentPayload {
  center: GeoPointPayload;
  radius_km: number;
  count: number;
  incidents: IncidentRow[];
  trends: {
    yearly: Record<string, number>;
    monthly: Record<string, number>;
  };
}

export interface CensusBlockPayload {
  geoid: string;
  geometry: GeoPointPayload[];
  total_population: number;
  below_poverty: number;
  below_half_poverty: number;
  housing_units: number;
}

export interface CensusPayload {
  center: GeoPointPayload;
  radius_km: number;
  totals: {
    total_population: number;
    below_poverty: number;
    below_half_poverty: number;
    housing_units: number;
  };
  block_count: number;
  blocks: CensusBlockPayload[];
}

export interface Envelope<T> {
  type: string;
  value: T;
}

/** One console event from POST /sessions/{id}/messages. */
export interface ConsoleEvent {
  kind: "text" | "map_layer" | "chart" | "stage";
  payload: Record<string, unknown>;
}

export interface MessageResponse {
  version: number;
  session_id: string;
  stage: string;
  events: ConsoleEvent[];
}

export interface SessionResponse {
  version: number;
  session_id: string;
  stage: string;
}

export function seasonPeriodKey(season: Season, period: Period): string {
  return `${season}_${period}`;
}
