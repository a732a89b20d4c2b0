import { describe, expect, it } from "vitest";

import type { GameStateResponse } from "../src/api.js";
import { buildBoardModel, knowledgeLag, statusBanner, viewportAround } from "../src/view.js";

function state(overrides: Partial<GameStateResponse> = {}): GameStateResponse {
  return {
    game_id: "g1",
    status: "awaiting_angel",
    variant: "unrestricted",
    s: 2,
    horizon: 100,
    devil: "big_sigma:n=8",
    angel: [0, 0],
    revealed: [[0, 0]],
    last_revealed: [0, 0],
    moves_made: 0,
    devil_rounds: 0,
    pending_initial_moves: 3,
    legal_moves: [
      [-1, 1], [0, 1], [1, 1],
      [-1, 0], [1, 0],
      [-1, -1], [0, -1], [1, -1],
    ],
    outcome_round: null,
    window: [-2, -2, 2, 2],
    deleted: [],
    deleted_total: 0,
    ...overrides,
  };
}

function kindAt(model: ReturnType<typeof buildBoardModel>, x: number, y: number) {
  return model.cells.find((c) => c.x === x && c.y === y)!.kind;
}

describe("buildBoardModel", () => {
  it("lays out the viewport row-major with the top row first", () => {
    const model = buildBoardModel(state());
    expect(model.width).toBe(5);
    expect(model.height).toBe(5);
    expect(model.cells[0]).toMatchObject({ x: -2, y: 2 });
    expect(model.cells.at(-1)).toMatchObject({ x: 2, y: -2 });
    expect(model.cells).toHaveLength(25);
  });

  it("classifies cells with angel > revealed > deleted > legal precedence", () => {
    const model = buildBoardModel(
      state({
        angel: [1, 1],
        last_revealed: [0, 0],
        moves_made: 3,
        deleted: [[0, 0], [2, 2], [1, 1]],
        legal_moves: [[0, 0], [2, 1]],
      }),
    );
    expect(kindAt(model, 1, 1)).toBe("angel"); // even though deleted under it
    expect(kindAt(model, 0, 0)).toBe("revealed"); // marker beats deleted & legal
    expect(kindAt(model, 2, 2)).toBe("deleted");
    expect(kindAt(model, 2, 1)).toBe("legal");
    expect(kindAt(model, -2, -2)).toBe("empty");
    expect(model.lagMarker).toEqual([0, 0]);
  });

  it("hides the lag marker when the devil is up to date", () => {
    const model = buildBoardModel(state({ angel: [0, 0], last_revealed: [0, 0] }));
    expect(model.lagMarker).toBeNull();
  });

  it("suppresses legal highlights when the game is over", () => {
    const model = buildBoardModel(state({ status: "devil_won", outcome_round: 7 }));
    expect(model.playable).toBe(false);
    expect(model.cells.every((c) => c.kind !== "legal")).toBe(true);
  });
});

describe("statusBanner", () => {
  it("announces outcomes and pending free moves", () => {
    expect(statusBanner(state({ status: "devil_won", outcome_round: 9 }))).toContain("9");
    expect(statusBanner(state({ status: "angel_survived", outcome_round: 50 }))).toContain("wins");
    expect(statusBanner(state({ pending_initial_moves: 3 }))).toContain("3 moves");
    expect(statusBanner(state({ pending_initial_moves: 0 }))).toBe("Your move.");
  });
});

describe("knowledgeLag", () => {
  it("equals moves made minus revealed moves", () => {
    expect(knowledgeLag(state({ moves_made: 5, revealed: [[0, 0], [0, 1], [1, 2], [1, 3]] }))).toBe(2);
  });
});

describe("viewportAround", () => {
  it("is centered and inclusive", () => {
    expect(viewportAround([3, -2], 2, 1)).toEqual([1, -3, 5, -1]);
  });
});
