import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("builds ranking-page URLs with pagination and annotator", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ entries: [] }));
    vi.stubGlobal("fetch", fetchMock);
    await new ApiClient("http://x").getRankingPage("luf_ig", 40, 20, "ana");
    expect(fetchMock).toHaveBeenCalledWith(
      "http://x/api/rankings/luf_ig?offset=40&limit=20&annotator=ana",
      undefined,
    );
  });

  it("POSTs annotations as JSON", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ word: "che" }));
    vi.stubGlobal("fetch", fetchMock);
    await new ApiClient().postAnnotation({
      word: "che",
      metric: "luf_ig",
      label: 1,
      annotator: "ana",
    });
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("/api/annotations");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body).label).toBe(1);
  });

  it("turns {code, message} errors into ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(jsonResponse({ code: "not_found", message: "nope" }, 404)),
    );
    const err = await new ApiClient().getWordDetail("x").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("not_found");
    expect(err.status).toBe(404);
    expect(err.message).toBe("nope");
  });

  it("wraps network failures", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("boom")));
    const err = await new ApiClient().getMetrics().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("network");
  });

  it("escapes words in URLs", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({}));
    vi.stubGlobal("fetch", fetchMock);
    await new ApiClient().getWordDetail("año/2");
    expect(fetchMock.mock.calls[0][0]).toBe("/api/words/a%C3%B1o%2F2");
  });
});
