/** Shared fixtures and a call-counting fetch stub for the suite. */

import type {
  BigramsResponse,
  MetaResponse,
  QueryResponse,
} from "../src/types";

export const META: MetaResponse = {
  schema_version: 1,
  generation: "00000007",
  first_date: "2020-04-01",
  last_date: "2020-04-05",
  last_update_instant: "2020-04-05T12:00:00+00:00",
  day_count: 5,
  token_total: 5208,
  type_total: 900,
  source_count: 3,
};

/** Five days, one within-mode unigram and one bigram, window-3 smoothing:
 * the smoothed column has null edges and hand-picked interior values.
 */
export function queryFixture(): QueryResponse {
  return {
    schema_version: 1,
    generation: "00000007",
    mode: "within",
    window: 3,
    date_from: "2020-04-01",
    date_to: "2020-04-05",
    meta: { denominators: { unigram: "token_total", bigram: "bigram_total" }, dropped_patterns: [] },
    series: [
      {
        pattern: "maske",
        kind: "unigram",
        points: [
          { date: "2020-04-01", abs: 9, rel: 0.009, smoothed: null },
          { date: "2020-04-02", abs: 6, rel: 0.006, smoothed: 0.007 },
          { date: "2020-04-03", abs: 3, rel: 0.006, smoothed: 0.0055 },
          { date: "2020-04-04", abs: 2, rel: 0.0045, smoothed: 0.005 },
          { date: "2020-04-05", abs: 4, rel: 0.0045, smoothed: null },
        ],
      },
      {
        pattern: "neue normalität",
        kind: "bigram",
        points: [
          { date: "2020-04-01", abs: 1, rel: 0.0011, smoothed: null },
          { date: "2020-04-02", abs: 0, rel: 0.0, smoothed: 0.0007 },
          { date: "2020-04-03", abs: 1, rel: 0.001, smoothed: 0.0005 },
          { date: "2020-04-04", abs: 0, rel: 0.0, smoothed: 0.0006 },
          { date: "2020-04-05", abs: 1, rel: 0.0008, smoothed: null },
        ],
      },
    ],
    // deliberately unranked: the table must order these itself
    hits: [
      { word_form: "maske", pattern: "maske", abs_count_in_range: 5 },
      { word_form: "maskenpflicht", pattern: "maske", abs_count_in_range: 7 },
      { word_form: "masken", pattern: "maske", abs_count_in_range: 9 },
      { word_form: "schutzmasken", pattern: "maske", abs_count_in_range: 3 },
    ],
  };
}

export function bigramsFixture(): BigramsResponse {
  return {
    schema_version: 1,
    generation: "00000007",
    pattern: "corona",
    bmode: "anywhere",
    date_from: "2020-04-01",
    date_to: "2020-04-05",
    limit: 100,
    results: [
      { form1: "das", form2: "coronavirus", count: 12 },
      { form1: "corona", form2: "bleibt", count: 7 },
      { form1: "die", form2: "corona-krise", count: 5 },
    ],
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** fetch stand-in routing by path prefix and counting every call. */
export class CountingFetch {
  calls: string[] = [];
  routes = new Map<string, () => Response>();

  route(prefix: string, make: () => Response): void {
    this.routes.set(prefix, make);
  }

  count(prefix: string): number {
    return this.calls.filter((url) => url.includes(prefix)).length;
  }

  fetch = (url: string): Promise<Response> => {
    this.calls.push(url);
    for (const [prefix, make] of this.routes) {
      if (url.includes(prefix)) {
        return Promise.resolve(make());
      }
    }
    return Promise.resolve(
      jsonResponse({ detail: `no route for ${url}` }, 404),
    );
  };
}

export function defaultRoutes(counting: CountingFetch): CountingFetch {
  counting.route("/api/v1/meta", () => jsonResponse(META));
  counting.route("/api/v1/query", () => jsonResponse(queryFixture()));
  counting.route("/api/v1/bigrams", () => jsonResponse(bigramsFixture()));
  return counting;
}

export function tick(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
