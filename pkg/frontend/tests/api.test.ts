import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";
import { CountingFetch, jsonResponse, META } from "./helpers";

function paramsOf(url: string): URLSearchParams {
  return new URLSearchParams(url.split("?")[1] ?? "");
}

describe("url building", () => {
  const api = new ApiClient("http://api.test");

  it("sends pattern text verbatim, commas and spaces included", () => {
    const url = api.queryUrl({
      patterns: "fc, corona,neue normalität",
      mode: "exact",
      window: 3,
    });
    expect(url.startsWith("http://api.test/api/v1/query?")).toBe(true);
    expect(paramsOf(url).get("patterns")).toBe("fc, corona,neue normalität");
  });

  it("never rewrites regex-looking input; sanitization is the server's job", () => {
    const raw = " ^Cor(ona)$ .* ";
    const url = api.queryUrl({ patterns: raw, mode: "within", window: 1 });
    expect(paramsOf(url).get("patterns")).toBe(raw);
  });

  it("omits empty range fields and keeps explicit ones", () => {
    const bare = api.queryUrl({ patterns: "corona", mode: "exact", window: 1 });
    expect(paramsOf(bare).has("from")).toBe(false);
    expect(paramsOf(bare).has("to")).toBe(false);

    const ranged = api.queryUrl({
      patterns: "corona",
      mode: "exact",
      from: "2020-04-01",
      to: "2020-04-05",
      window: 1,
    });
    expect(paramsOf(ranged).get("from")).toBe("2020-04-01");
    expect(paramsOf(ranged).get("to")).toBe("2020-04-05");
  });

  it("export URL mirrors the query URL on the export path", () => {
    const params = { patterns: "corona", mode: "exact" as const, window: 7 };
    const csv = api.exportCsvUrl(params);
    expect(csv.includes("/api/v1/export.csv?")).toBe(true);
    expect(paramsOf(csv).toString()).toBe(paramsOf(api.queryUrl(params)).toString());
  });

  it("bigrams URL carries pattern, bmode and optional limit", () => {
    const url = api.bigramsUrl({ pattern: "corona", bmode: "first", limit: 50 });
    const params = paramsOf(url);
    expect(params.get("pattern")).toBe("corona");
    expect(params.get("bmode")).toBe("first");
    expect(params.get("limit")).toBe("50");
    const unlimited = api.bigramsUrl({ pattern: "corona", bmode: "anywhere" });
    expect(paramsOf(unlimited).has("limit")).toBe(false);
  });
});

describe("request handling", () => {
  it("parses a JSON body", async () => {
    const counting = new CountingFetch();
    counting.route("/api/v1/meta", () => jsonResponse(META));
    const api = new ApiClient("", counting.fetch);
    const meta = await api.meta();
    expect(meta.generation).toBe("00000007");
    expect(counting.calls).toHaveLength(1);
  });

  it("maps API validation failures to the server's detail message", async () => {
    const counting = new CountingFetch();
    counting.route("/api/v1/query", () =>
      jsonResponse({ detail: "window must be in [1, 14], got 15" }, 400),
    );
    const api = new ApiClient("", counting.fetch);
    await expect(
      api.query({ patterns: "corona", mode: "exact", window: 15 }),
    ).rejects.toMatchObject({
      name: "ApiError",
      status: 400,
      message: "window must be in [1, 14], got 15",
    });
  });

  it("keeps a usable message for non-JSON error bodies", async () => {
    const api = new ApiClient("", () =>
      Promise.resolve(new Response("gateway down", { status: 502 })),
    );
    await expect(api.meta()).rejects.toMatchObject({
      status: 502,
      message: "request failed with status 502",
    });
  });

  it("wraps transport failures as status 0", async () => {
    const api = new ApiClient("", () => Promise.reject(new Error("offline")));
    const failure = await api.meta().catch((exc: ApiError) => exc);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(0);
  });
});
