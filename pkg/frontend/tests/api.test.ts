import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, type FetchLike } from "../src/api.js";

interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

function mockFetch(
  status: number,
  payload: unknown,
  log: Recorded[] = [],
): FetchLike {
  return async (url, init) => {
    log.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}

describe("ApiClient", () => {
  it("hits the documented endpoints with the documented payloads", async () => {
    const log: Recorded[] = [];
    const api = new ApiClient("", mockFetch(200, {}, log));
    await api.listSessions();
    await api.getSession("s1");
    await api.getPlot("s1", true);
    await api.regionQuery("s1", {
      type: "rectangle", u_min: 0, u_max: 1, v_min: 0, v_max: 1,
    });
    await api.getLabels("s1", "hybrid");
    await api.putLabels("s1", "human", [[1, 2]], 3);

    expect(log.map((r) => `${r.method} ${r.url}`)).toEqual([
      "GET /api/sessions",
      "GET /api/sessions/s1",
      "GET /api/sessions/s1/plot?include_untrusted=true",
      "POST /api/sessions/s1/region-query",
      "GET /api/sessions/s1/labels/hybrid",
      "PUT /api/sessions/s1/labels/human",
    ]);
    expect(log[3].body).toEqual({
      shape: { type: "rectangle", u_min: 0, u_max: 1, v_min: 0, v_max: 1 },
      include_untrusted: false,
    });
    expect(log[5].body).toEqual({ intervals: [[1, 2]], version: 3 });
  });

  it("URL-encodes session ids", async () => {
    const log: Recorded[] = [];
    await new ApiClient("", mockFetch(200, {}, log)).getSession("a/b c");
    expect(log[0].url).toBe("/api/sessions/a%2Fb%20c");
  });

  it("surfaces the server's error message and status", async () => {
    const api = new ApiClient("", mockFetch(404, { error: "unknown session 'x'" }));
    await expect(api.getSession("x")).rejects.toMatchObject({
      name: "ApiError",
      status: 404,
      message: "unknown session 'x'",
    });
  });

  it("exposes current_version on 409 conflicts", async () => {
    const api = new ApiClient(
      "",
      mockFetch(409, { error: "stale", current_version: 7 }),
    );
    try {
      await api.putLabels("s1", "human", [], 1);
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).currentVersion).toBe(7);
    }
  });
});
