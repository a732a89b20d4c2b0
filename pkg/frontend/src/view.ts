// Pure view model: turns a server state response into exactly what gets
// painted. There is no rules engine here; every cell comes from server data.

import type { GameStateResponse, Square } from "./api.js";

export type CellKind = "angel" | "revealed" | "deleted" | "legal" | "empty";

export interface Cell {
  x: number;
  y: number;
  kind: CellKind;
}

export interface BoardModel {
  viewport: [number, number, number, number];
  width: number;
  height: number;
  /** Row-major, top row (max y) first, matching on-screen layout. */
  cells: Cell[];
  lagMarker: Square | null;
  playable: boolean;
}

export function viewportAround(
  center: Square,
  radiusX: number,
  radiusY: number,
): [number, number, number, number] {
  return [center[0] - radiusX, center[1] - radiusY, center[0] + radiusX, center[1] + radiusY];
}

const key = (x: number, y: number) => `${x},${y}`;

export function buildBoardModel(state: GameStateResponse): BoardModel {
  const [x0, y0, x1, y1] = state.window;
  const deleted = new Set(state.deleted.map(([x, y]) => key(x, y)));
  const legal = new Set(
    (state.status === "awaiting_angel" ? state.legal_moves : []).map(([x, y]) => key(x, y)),
  );
  const [ax, ay] = state.angel;
  const [rx, ry] = state.last_revealed;
  const showMarker = rx !== ax || ry !== ay;
  const cells: Cell[] = [];
  for (let y = y1; y >= y0; y--) {
    for (let x = x0; x <= x1; x++) {
      let kind: CellKind = "empty";
      const k = key(x, y);
      if (x === ax && y === ay) {
        kind = "angel";
      } else if (showMarker && x === rx && y === ry) {
        kind = "revealed";
      } else if (deleted.has(k)) {
        kind = "deleted";
      } else if (legal.has(k)) {
        kind = "legal";
      }
      cells.push({ x, y, kind });
    }
  }
  return {
    viewport: [x0, y0, x1, y1],
    width: x1 - x0 + 1,
    height: y1 - y0 + 1,
    cells,
    lagMarker: showMarker ? [rx, ry] : null,
    playable: state.status === "awaiting_angel",
  };
}

export function statusBanner(state: GameStateResponse): string {
  switch (state.status) {
    case "devil_won":
      return `The Devil trapped you after ${state.outcome_round} deletions.`;
    case "angel_survived":
      return `You survived ${state.outcome_round} Devil rounds. The Angel wins!`;
    case "awaiting_angel": {
      const pending = state.pending_initial_moves;
      if (pending > 0) {
        return `Your move. The Devil is blind to your first ${pending} ${
          pending === 1 ? "move" : "moves"
        }.`;
      }
      return "Your move.";
    }
    default:
      return "Devil is thinking...";
  }
}

/** Lag in moves between the Angel's true position and what the Devil knows. */
export function knowledgeLag(state: GameStateResponse): number {
  return state.moves_made - (state.revealed.length - 1);
}
