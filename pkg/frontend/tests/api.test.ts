import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("posts a create request and returns the parsed view", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(201, { id: "abc", board: "." }));
    vi.stubGlobal("fetch", fetchMock);
    const client = new ApiClient("http://svc");
    const view = await client.createGame({
      size: 3,
      x_engine: { type: "human" },
      o_engine: { type: "random" },
    });
    expect(view.id).toBe("abc");
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("http://svc/api/games");
    expect(init?.method).toBe("POST");
    expect(JSON.parse(init!.body as string).x_engine.type).toBe("human");
  });

  it("turns {error} bodies into ApiError with the status", async () => {
    vi.stubGlobal("fetch", async () => jsonResponse(422, { error: "cell 4 is occupied" }));
    const client = new ApiClient();
    const failure = await client.move("id", 4).catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(422);
    expect((failure as ApiError).message).toBe("cell 4 is occupied");
  });

  it("copes with non-JSON error bodies", async () => {
    vi.stubGlobal("fetch", async () => new Response("boom", { status: 502, statusText: "Bad Gateway" }));
    const failure = await new ApiClient().engines().catch((e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).message).toContain("502");
  });

  it("returns nothing for 204 deletes", async () => {
    vi.stubGlobal("fetch", async () => new Response(null, { status: 204 }));
    await expect(new ApiClient().deleteGame("id")).resolves.toBeUndefined();
  });
});
