/** API payload shapes, mirroring docs/api.md. */

export interface RegionInfo {
  name: string;
  cities: string[];
  counties: string[];
  utilities: string[];
}

export interface RouteSite {
  k: number;
  node_id: number;
  lat: number;
  lon: number;
  county: string;
  utility_id: string;
  cum_km: number;
}

export interface RouteSegment {
  k: number;
  d_km: number;
  v_kph: number;
  t_h: number;
}

export interface RoutePayload {
  route_id: string;
  origin: string;
  destination: string;
  distance_km: number;
  duration_h: number;
  highways: string[];
  nodes: number[];
  sites: RouteSite[];
  segments: RouteSegment[];
}

export interface ScenarioRequest {
  cities: string[];
  bev_fraction: number;
  k_routes: number;
  spacing_km: number;
  sweep_steps: number;
}

export interface JobRecord {
  job_id: string;
  status: "queued" | "running" | "done" | "failed";
  submitted_at: string;
  result_path: string | null;
  error: string | null;
}

export interface SweepPoint {
  bev_fraction: number;
  cost_usd: number;
  co2_kg: number;
}

export interface ChoroplethCell {
  energy_kwh: number;
  reduction_kgco2: number;
}

export interface ScenarioResult {
  bev: { cost_usd: number; co2_kg: number; energy_kwh: number };
  icev: { cost_usd: number; co2_kg: number; energy_mwh: number; gallons: number };
  blended: { bev_fraction: number; cost_usd: number; co2_kg: number };
  charge_by_utility: Record<string, number>;
  fuel_by_county: Record<string, number>;
  energy_by_county: Record<string, number>;
  emission_reduction_by_county: Record<string, number>;
  sweep: SweepPoint[];
  choropleth: Record<string, ChoroplethCell>;
  runtime_s: number;
}
