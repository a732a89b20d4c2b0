// App wiring: new-game form, click-to-move loop, viewport follow/pan.

import { ApiError, GameApi, type GameStateResponse, type Square } from "./api.js";
import { BoardRenderer } from "./board.js";
import { buildBoardModel, statusBanner, viewportAround } from "./view.js";

const RADIUS_X = 18;
const RADIUS_Y = 12;

interface AppState {
  gameId: string | null;
  state: GameStateResponse | null;
  moveInFlight: boolean;
  followAngel: boolean;
  panCenter: Square;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export function startApp(): void {
  const api = new GameApi("");
  const app: AppState = {
    gameId: null,
    state: null,
    moveInFlight: false,
    followAngel: true,
    panCenter: [0, 0],
  };
  const board = new BoardRenderer(el("board"));
  const banner = el("banner");
  const info = el("info");
  const form = el<HTMLFormElement>("new-game");
  const errorBox = el("form-error");

  function center(): Square {
    return app.followAngel && app.state ? app.state.angel : app.panCenter;
  }

  async function refresh(animate: Set<string> | null = null): Promise<void> {
    if (!app.gameId) return;
    const window = viewportAround(center(), RADIUS_X, RADIUS_Y);
    app.state = await api.getState(app.gameId, window);
    paint(animate);
  }

  function paint(animate: Set<string> | null = null): void {
    if (!app.state) return;
    const model = buildBoardModel(app.state);
    board.setClickHandler(app.moveInFlight || !model.playable ? null : onCellClick);
    board.render(model, animate);
    banner.textContent = statusBanner(app.state);
    const s = app.state;
    info.textContent =
      `round ${s.devil_rounds} | moves ${s.moves_made} | ` +
      `deleted ${s.deleted_total} | devil sees you at (${s.last_revealed[0]}, ${s.last_revealed[1]})`;
    const over = s.status === "devil_won" || s.status === "angel_survived";
    document.body.classList.toggle("game-over", over);
  }

  async function onCellClick(x: number, y: number): Promise<void> {
    if (!app.gameId || app.moveInFlight) return;
    app.moveInFlight = true;
    paint();
    try {
      const reply = await api.angelMove(app.gameId, [x, y]);
      app.state = reply.state;
      const fresh = new Set<string>();
      for (const ev of reply.events) {
        if (ev.t === "devil" && ev.del) fresh.add(`${ev.del[0]},${ev.del[1]}`);
      }
      app.moveInFlight = false;
      await refresh(fresh);
    } catch (err) {
      app.moveInFlight = false;
      if (err instanceof ApiError && err.status === 409) {
        banner.textContent = `Illegal move: ${err.message}`;
        el("board").classList.add("shake");
        setTimeout(() => el("board").classList.remove("shake"), 400);
        if (err.state) {
          app.state = err.state;
          paint();
        }
      } else {
        banner.textContent = `Request failed: ${err}`;
      }
    }
  }

  form.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    errorBox.textContent = "";
    const variant = el<HTMLSelectElement>("variant").value;
    const sneak = parseInt(el<HTMLInputElement>("sneak").value, 10);
    const devil = el<HTMLInputElement>("devil").value.trim();
    try {
      if (app.gameId) {
        await api.deleteGame(app.gameId).catch(() => undefined);
      }
      const created = await api.createGame({ variant, s: sneak, devil });
      app.gameId = created.game_id;
      app.followAngel = true;
      banner.textContent =
        created.pending_initial_moves > 1
          ? `Game on. Make ${created.pending_initial_moves} moves before the Devil reacts to you.`
          : "Game on.";
      app.state = created.state;
      await refresh();
    } catch (err) {
      errorBox.textContent = err instanceof ApiError ? err.message : String(err);
    }
  });

  for (const [id, dx, dy] of [
    ["pan-left", -6, 0],
    ["pan-right", 6, 0],
    ["pan-up", 0, 6],
    ["pan-down", 0, -6],
  ] as const) {
    el(id).addEventListener("click", async () => {
      app.followAngel = false;
      const c = center();
      app.panCenter = [c[0] + dx, c[1] + dy];
      await refresh();
    });
  }
  el("pan-follow").addEventListener("click", async () => {
    app.followAngel = true;
    await refresh();
  });
  el("trace-link").addEventListener("click", async (ev) => {
    ev.preventDefault();
    if (!app.gameId) return;
    const text = await api.getTrace(app.gameId);
    const blob = new Blob([text], { type: "application/x-ndjson" });
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = `game-${app.gameId}.jsonl`;
    a.click();
    URL.revokeObjectURL(url);
  });
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  startApp();
}
