// @vitest-environment happy-dom
//
// Scripted session against the real play service: spawn the server, play a
// full side-to-side game with s = 2 against the wall-assisted devil, and
// check on every round that what the client would paint is exactly what the
// server reports, and that the devil's knowledge trails by exactly s moves.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GameApi, type GameStateResponse, type Square } from "../src/api.js";
import { BoardRenderer } from "../src/board.js";
import { buildBoardModel } from "../src/view.js";

let proc: ChildProcess;
let api: GameApi;

function startServer(): Promise<string> {
  return new Promise((resolve, reject) => {
    proc = spawn("python3", ["-m", "angeldevil", "serve", "--port", "0"], {
      stdio: ["ignore", "pipe", "pipe"],
    });
    let out = "";
    const onData = (chunk: Buffer) => {
      out += chunk.toString();
      const match = out.match(/listening on (http:\/\/[\d.]+:\d+)\//);
      if (match) {
        proc.stdout?.off("data", onData);
        resolve(match[1]);
      }
    };
    proc.stdout?.on("data", onData);
    proc.on("error", reject);
    proc.on("exit", (code) => reject(new Error(`server exited early (${code}): ${out}`)));
    setTimeout(() => reject(new Error(`server did not start: ${out}`)), 15000);
  });
}

beforeAll(async () => {
  const base = await startServer();
  api = new GameApi(base);
}, 20000);

afterAll(() => {
  proc?.removeAllListeners("exit");
  proc?.kill();
});

function modelsEqual(a: GameStateResponse, b: GameStateResponse): boolean {
  const ma = buildBoardModel(a);
  const mb = buildBoardModel(b);
  if (ma.cells.length !== mb.cells.length) return false;
  return ma.cells.every(
    (cell, i) => cell.x === mb.cells[i].x && cell.y === mb.cells[i].y && cell.kind === mb.cells[i].kind,
  );
}

describe("full game against the wall-assisted devil (s = 2)", () => {
  it("completes with consistent rendering and an exact lag of 2", async () => {
    const created = await api.createGame({ variant: "side_to_side", s: 2, devil: "sigma_hat:n=8,m=72" });
    expect(created.pending_initial_moves).toBe(3);
    const gid = created.game_id;

    const container = document.createElement("div");
    document.body.appendChild(container);
    const renderer = new BoardRenderer(container);

    const history: Square[] = [[0, 0]];
    let state = created.state;
    let rounds = 0;
    let deletionsSeen = 0;

    while (state.status === "awaiting_angel") {
      const move = state.legal_moves[0]; // server-provided; lowest row first
      expect(move).toBeDefined();
      const reply = await api.angelMove(gid, move);
      history.push(move);
      state = reply.state;
      rounds += 1;

      // exactly one deletion per completed round in the event stream
      const dels = reply.events.filter((e) => e.t === "devil");
      expect(dels.length).toBeLessThanOrEqual(1);
      deletionsSeen += dels.length;

      // rendered board model equals a fresh server read of the same window
      const fresh = await api.getState(gid, state.window as [number, number, number, number]);
      expect(modelsEqual(state, fresh)).toBe(true);

      // the devil's knowledge trails the true position by exactly s = 2
      if (state.moves_made > 2) {
        const expected = history[state.moves_made - 2];
        expect(state.last_revealed).toEqual(expected);
        expect(state.moves_made - (state.revealed.length - 1)).toBe(2);
      } else {
        expect(state.last_revealed).toEqual([0, 0]);
      }

      // spot-check the painted DOM against the model every 25 rounds
      if (rounds % 25 === 0) {
        const model = buildBoardModel(state);
        renderer.render(model);
        const painted = renderer.paintedKinds();
        for (const cell of model.cells) {
          expect(painted.get(`${cell.x},${cell.y}`)).toBe(cell.kind);
        }
      }
    }

    expect(state.status).toBe("devil_won");
    expect(deletionsSeen).toBe(state.devil_rounds);
    expect(state.legal_moves).toEqual([]);

    // final paint: outcome visible, nothing clickable
    const model = buildBoardModel(state);
    expect(model.playable).toBe(false);
    renderer.render(model);
    expect(container.querySelectorAll(".cell-clickable").length).toBe(0);

    // the trace endpoint streams the full replayable game
    const trace = await api.getTrace(gid);
    const lines = trace.trim().split("\n");
    expect(JSON.parse(lines[0]).t).toBe("config");
    const outcome = JSON.parse(lines[lines.length - 1]);
    expect(outcome.result).toBe("devil_won");
    await api.deleteGame(gid);
  }, 180000);
});
