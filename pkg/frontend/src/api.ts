// Typed client for the play service. The server is the rules engine; this
// module only moves JSON.

export type Square = [number, number];

export interface GameStateResponse {
  game_id: string;
  status: "awaiting_angel" | "awaiting_devil" | "devil_won" | "angel_survived";
  variant: string;
  s: number;
  horizon: number;
  devil: string;
  angel: Square;
  revealed: Square[];
  last_revealed: Square;
  moves_made: number;
  devil_rounds: number;
  pending_initial_moves: number;
  legal_moves: Square[];
  outcome_round: number | null;
  window: [number, number, number, number];
  deleted: Square[];
  deleted_total: number;
}

export interface CreateGameResponse {
  game_id: string;
  pending_initial_moves: number;
  state: GameStateResponse;
}

export interface MoveEvent {
  t: "angel" | "devil";
  i?: number;
  r?: number;
  to?: Square;
  del?: Square;
}

export interface MoveResponse {
  state: GameStateResponse;
  events: MoveEvent[];
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly state?: GameStateResponse,
  ) {
    super(message);
  }
}

async function request<T>(
  base: string,
  method: string,
  path: string,
  body?: unknown,
): Promise<T> {
  const res = await fetch(base + path, {
    method,
    headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
    body: body !== undefined ? JSON.stringify(body) : undefined,
  });
  if (res.status === 204) {
    return undefined as T;
  }
  const text = await res.text();
  const payload = text ? JSON.parse(text) : {};
  if (!res.ok) {
    throw new ApiError(payload.error ?? `HTTP ${res.status}`, res.status, payload.state);
  }
  return payload as T;
}

export class GameApi {
  constructor(readonly base: string = "") {}

  createGame(params: {
    variant: string;
    s: number;
    devil: string;
    horizon?: number;
  }): Promise<CreateGameResponse> {
    return request(this.base, "POST", "/games", params);
  }

  getState(
    gameId: string,
    window?: [number, number, number, number],
  ): Promise<GameStateResponse> {
    const qs = window
      ? `?x0=${window[0]}&y0=${window[1]}&x1=${window[2]}&y1=${window[3]}`
      : "";
    return request(this.base, "GET", `/games/${gameId}/state${qs}`);
  }

  angelMove(gameId: string, to: Square): Promise<MoveResponse> {
    return request(this.base, "POST", `/games/${gameId}/angel-move`, { to });
  }

  async getTrace(gameId: string): Promise<string> {
    const res = await fetch(`${this.base}/games/${gameId}/trace`);
    if (!res.ok) {
      throw new ApiError(`HTTP ${res.status}`, res.status);
    }
    return res.text();
  }

  deleteGame(gameId: string): Promise<void> {
    return request(this.base, "DELETE", `/games/${gameId}`);
  }
}
