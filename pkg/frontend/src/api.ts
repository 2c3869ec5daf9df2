import type { CategoryDto, EgoPayload, GraphPayload, StatsDto } from "./types";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(detail, response.status);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  categories(): Promise<CategoryDto[]> {
    return getJson(`${this.baseUrl}/api/categories`);
  }

  graph(threshold: number): Promise<GraphPayload> {
    return getJson(`${this.baseUrl}/api/graph?threshold=${threshold}`);
  }

  ego(
    focus: number,
    threshold: number,
    options: { decay?: number; fire?: number } = {},
  ): Promise<EgoPayload> {
    const params = new URLSearchParams({ threshold: String(threshold) });
    if (options.decay !== undefined) params.set("decay", String(options.decay));
    if (options.fire !== undefined) params.set("fire", String(options.fire));
    return getJson(`${this.baseUrl}/api/ego/${focus}?${params}`);
  }

  stats(): Promise<StatsDto> {
    return getJson(`${this.baseUrl}/api/stats`);
  }
}
