// @vitest-environment happy-dom
import { describe, expect, it, vi } from "vitest";

import type { GameStateResponse } from "../src/api.js";
import { BoardRenderer } from "../src/board.js";
import { buildBoardModel } from "../src/view.js";

function state(): GameStateResponse {
  return {
    game_id: "g",
    status: "awaiting_angel",
    variant: "unrestricted",
    s: 0,
    horizon: 10,
    devil: "sigma:n=8",
    angel: [0, 0],
    revealed: [[0, 0]],
    last_revealed: [0, 0],
    moves_made: 0,
    devil_rounds: 1,
    pending_initial_moves: 1,
    legal_moves: [[0, 1], [1, 1]],
    outcome_round: null,
    window: [-1, -1, 1, 1],
    deleted: [[-1, 1]],
    deleted_total: 1,
  };
}

describe("BoardRenderer", () => {
  it("paints exactly the model and reports clicks on legal cells", () => {
    const container = document.createElement("div");
    document.body.appendChild(container);
    const renderer = new BoardRenderer(container);
    const clicks: Array<[number, number]> = [];
    renderer.setClickHandler((x, y) => clicks.push([x, y]));
    const model = buildBoardModel(state());
    renderer.render(model);

    const painted = renderer.paintedKinds();
    expect(painted.size).toBe(9);
    for (const cell of model.cells) {
      expect(painted.get(`${cell.x},${cell.y}`)).toBe(cell.kind);
    }

    const legal = container.querySelector<HTMLElement>('[data-x="1"][data-y="1"]')!;
    legal.click();
    expect(clicks).toEqual([[1, 1]]);

    const empty = container.querySelector<HTMLElement>('[data-x="0"][data-y="-1"]')!;
    empty.click();
    expect(clicks).toEqual([[1, 1]]); // only legal cells are clickable
  });

  it("marks fresh deletions for the landing animation", () => {
    const container = document.createElement("div");
    const renderer = new BoardRenderer(container);
    renderer.render(buildBoardModel(state()), new Set(["-1,1"]));
    const fresh = container.querySelector<HTMLElement>('[data-x="-1"][data-y="1"]')!;
    expect(fresh.classList.contains("cell-fresh")).toBe(true);
  });
});
