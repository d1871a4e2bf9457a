/** Thin typed client for the frequency API.
 *
 * Pattern text travels to the server verbatim: sanitization is
 * server-authoritative and the client never builds regex syntax.
 */

import type {
  BigramParams,
  BigramsResponse,
  MetaResponse,
  QueryParams,
  QueryResponse,
} from "./types";

export type FetchLike = (url: string) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

function queryString(params: Record<string, string | number | undefined>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== "") {
      search.set(key, String(value));
    }
  }
  return search.toString();
}

export class ApiClient {
  private readonly fetchLike: FetchLike;

  constructor(
    public readonly baseUrl: string = "",
    fetchLike?: FetchLike,
  ) {
    this.fetchLike = fetchLike ?? ((url) => fetch(url));
  }

  queryUrl(params: QueryParams): string {
    const qs = queryString({
      patterns: params.patterns,
      mode: params.mode,
      from: params.from,
      to: params.to,
      window: params.window,
    });
    return `${this.baseUrl}/api/v1/query?${qs}`;
  }

  /** Link target for the CSV download button; the browser fetches it itself. */
  exportCsvUrl(params: QueryParams): string {
    const qs = queryString({
      patterns: params.patterns,
      mode: params.mode,
      from: params.from,
      to: params.to,
      window: params.window,
    });
    return `${this.baseUrl}/api/v1/export.csv?${qs}`;
  }

  bigramsUrl(params: BigramParams): string {
    const qs = queryString({
      pattern: params.pattern,
      bmode: params.bmode,
      from: params.from,
      to: params.to,
      limit: params.limit,
    });
    return `${this.baseUrl}/api/v1/bigrams?${qs}`;
  }

  async meta(): Promise<MetaResponse> {
    return this.request(`${this.baseUrl}/api/v1/meta`);
  }

  async query(params: QueryParams): Promise<QueryResponse> {
    return this.request(this.queryUrl(params));
  }

  async bigrams(params: BigramParams): Promise<BigramsResponse> {
    return this.request(this.bigramsUrl(params));
  }

  private async request<T>(url: string): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchLike(url);
    } catch (exc) {
      throw new ApiError(0, `network failure: ${String(exc)}`);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await describeFailure(response));
    }
    return (await response.json()) as T;
  }
}

async function describeFailure(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") {
      return body.detail;
    }
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `request failed with status ${response.status}`;
}
