/** Thin typed client over the scenario service API. */

import type {
  JobRecord,
  RegionInfo,
  RoutePayload,
  ScenarioRequest,
  ScenarioResult,
} from "./types.js";

export type Fetcher = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = `${response.status}`;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (body.detail !== undefined) {
      detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body.detail);
    }
  } catch {
    // non-JSON error body: keep the status text
  }
  return new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetcher: Fetcher = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetcher(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  getRegion(): Promise<RegionInfo> {
    return this.get<RegionInfo>("/api/region");
  }

  getRoutes(origin: string, destination: string): Promise<RoutePayload[]> {
    const params = new URLSearchParams({ origin, destination });
    return this.get<RoutePayload[]>(`/api/routes?${params}`);
  }

  async postScenario(request: ScenarioRequest): Promise<{ job_id: string }> {
    const response = await this.fetcher(`${this.baseUrl}/api/scenario`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as { job_id: string };
  }

  getJob(jobId: string): Promise<JobRecord> {
    return this.get<JobRecord>(`/api/jobs/${jobId}`);
  }

  getResult(jobId: string): Promise<ScenarioResult> {
    return this.get<ScenarioResult>(`/api/results/${jobId}`);
  }
}
