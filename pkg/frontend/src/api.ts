import type {
  AttributionDoc,
  DatasetUploadDoc,
  DiscoverDoc,
  InterventionDoc,
  LayoutDoc,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

/**
 * Thin typed client over the what-if service. The UI never computes a
 * statistic itself; every number it shows passes through one of these
 * methods, which makes the whole view layer mockable by swapping
 * `fetchImpl`.
 */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      const code = typeof body?.code === "string" ? body.code : "unknown";
      const message =
        typeof body?.message === "string" ? body.message : resp.statusText;
      throw new ApiRequestError(code, message, resp.status);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  uploadDataset(data: string, config?: unknown): Promise<DatasetUploadDoc> {
    return this.post("/datasets", { data, config: config ?? null });
  }

  discover(
    datasetId: string,
    params: { penaltyDiscount?: number; maxParents?: number } = {},
  ): Promise<DiscoverDoc> {
    return this.post(`/datasets/${datasetId}/discover`, params);
  }

  getGraph(graphId: string, focus?: string): Promise<LayoutDoc> {
    const query = focus ? `?focus=${encodeURIComponent(focus)}` : "";
    return this.request(`/graphs/${graphId}${query}`);
  }

  intervene(
    graphId: string,
    assignments: { column: string; value: string }[],
    options: { sampleCount?: number; seed?: number } = {},
  ): Promise<InterventionDoc> {
    return this.post(`/graphs/${graphId}/intervene`, {
      assignments,
      ...options,
    });
  }

  attribute(
    graphId: string,
    column: string,
    value: string,
    options: { sampleCount?: number; seed?: number } = {},
  ): Promise<AttributionDoc> {
    return this.post(`/graphs/${graphId}/attribute`, {
      column,
      value,
      ...options,
    });
  }
}
