import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, GameApi } from "../src/api.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("GameApi", () => {
  it("creates games with the documented body", async () => {
    const mock = vi
      .spyOn(globalThis, "fetch")
      .mockResolvedValue(jsonResponse(201, { game_id: "abc", pending_initial_moves: 3, state: {} }));
    const api = new GameApi("http://x");
    const created = await api.createGame({ variant: "upward", s: 2, devil: "sigma:n=16" });
    expect(created.game_id).toBe("abc");
    expect(created.pending_initial_moves).toBe(3);
    const [url, init] = mock.mock.calls[0];
    expect(url).toBe("http://x/games");
    expect(init?.method).toBe("POST");
    expect(JSON.parse(init?.body as string)).toEqual({ variant: "upward", s: 2, devil: "sigma:n=16" });
  });

  it("requests windowed state", async () => {
    const mock = vi.spyOn(globalThis, "fetch").mockResolvedValue(jsonResponse(200, { game_id: "g" }));
    await new GameApi("").getState("g", [-3, -4, 5, 6]);
    expect(mock.mock.calls[0][0]).toBe("/games/g/state?x0=-3&y0=-4&x1=5&y1=6");
  });

  it("posts angel moves and returns events", async () => {
    const mock = vi.spyOn(globalThis, "fetch").mockResolvedValue(
      jsonResponse(200, { state: {}, events: [{ t: "angel", i: 1, to: [0, 1] }] }),
    );
    const reply = await new GameApi("").angelMove("g", [0, 1]);
    expect(reply.events[0].t).toBe("angel");
    expect(JSON.parse(mock.mock.calls[0][1]?.body as string)).toEqual({ to: [0, 1] });
  });

  it("surfaces 409 rejections with the server reason and state", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      jsonResponse(409, { error: "not a legal offset", state: { game_id: "g" } }),
    );
    const err = await new GameApi("").angelMove("g", [9, 9]).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.message).toContain("legal offset");
    expect(err.state?.game_id).toBe("g");
  });

  it("deletes sessions and tolerates 204", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(new Response(null, { status: 204 }));
    await expect(new GameApi("").deleteGame("g")).resolves.toBeUndefined();
  });
});
