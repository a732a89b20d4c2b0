"""Local HTTP/JSON play service: a human drives the Angel against a Devil.

Endpoints (all JSON unless noted):

    POST   /games                  {"variant","s","devil"[,"horizon"]}
    GET    /games/{id}/state       ?x0=&y0=&x1=&y1=  board window
    POST   /games/{id}/angel-move  {"to":[x,y]}
    GET    /games/{id}/trace       JSON-lines text of the game so far
    DELETE /games/{id}

The Devil replies synchronously: whenever a move hands the turn to the Devil,
its deletion is applied before the response is built, so each angel-move
response carries the triggered deletion. ``pending_initial_moves`` is s + 1:
the number of moves the human makes before the Devil has reacted to any of
them (the first deletion is chosen blind).

Sessions live in memory; each is mutated under its own lock. The server binds
loopback by default — it is a play harness, not a deployment.
"""

from __future__ import annotations

import json
import mimetypes
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .board import AngelVariant, square_key
from .devil_strategies import (
    BigSigmaDevil,
    SigmaHatDevil,
    StrategyError,
    big_sigma_horizon,
    parse_devil,
    sigma_hat_horizon,
    wall_squares,
)
from .game import (
    GameConfig,
    GameError,
    GameStatus,
    apply_angel_move,
    apply_devil_delete,
    devil_view,
    initial_state,
)
from .trace import AngelMove, DevilDelete, Trace, serialize_trace

DEFAULT_WINDOW_RADIUS = 25


class Session:
    def __init__(self, game_id: str, config: GameConfig, devil, devil_text: str) -> None:
        self.game_id = game_id
        self.config = config
        self.devil = devil
        self.devil_text = devil_text
        self.state = initial_state(config)
        self.events: list = []
        self.lock = threading.Lock()

    def play_devil_turns(self) -> list:
        """Let the Devil act while it is on turn; returns the new events."""
        new_events = []
        while self.state.status is GameStatus.AWAITING_DEVIL:
            view = devil_view(self.state)
            try:
                sq = self.devil.choose(view)
            except StrategyError as exc:
                raise GameError(f"devil strategy gave up: {exc}") from exc
            apply_devil_delete(self.state, sq)
            ev = DevilDelete(view.round, sq)
            self.events.append(ev)
            new_events.append(ev)
        return new_events

    def angel_move(self, to) -> list:
        index = self.state.moves_made + 1
        apply_angel_move(self.state, to)
        ev = AngelMove(index, to)
        self.events.append(ev)
        return [ev] + self.play_devil_turns()

    def trace(self) -> Trace:
        return Trace(
            config=self.config,
            events=list(self.events),
            status=self.state.status,
            final_round=self.state.final_round,
        )


def _event_json(ev) -> dict:
    if isinstance(ev, AngelMove):
        return {"t": "angel", "i": ev.index, "to": list(ev.to)}
    return {"t": "devil", "r": ev.round, "del": list(ev.square)}


def _state_json(session: Session, window=None) -> dict:
    state = session.state
    config = session.config
    ax, ay = state.angel
    if window is None:
        window = (
            ax - DEFAULT_WINDOW_RADIUS,
            ay - DEFAULT_WINDOW_RADIUS,
            ax + DEFAULT_WINDOW_RADIUS,
            ay + DEFAULT_WINDOW_RADIUS,
        )
    x0, y0, x1, y1 = window
    # Each Angel move past the opening burst reveals one older move, so the
    # Devil's knowledge is the first moves_made - sneak moves (plus the start).
    revealed = state.positions[: max(0, state.moves_made - config.sneak) + 1]
    deleted_window = sorted(
        (
            sq
            for sq in state.deleted
            if x0 <= sq[0] <= x1 and y0 <= sq[1] <= y1
        ),
        key=square_key,
    )
    legal = (
        sorted(state.legal_moves(), key=square_key)
        if state.status is GameStatus.AWAITING_ANGEL
        else []
    )
    return {
        "game_id": session.game_id,
        "status": state.status.value,
        "variant": config.variant.value,
        "s": config.sneak,
        "horizon": config.horizon,
        "devil": session.devil_text,
        "angel": [ax, ay],
        "revealed": [list(sq) for sq in revealed],
        "last_revealed": list(revealed[-1]),
        "moves_made": state.moves_made,
        "devil_rounds": state.devil_rounds,
        "pending_initial_moves": max(0, config.sneak + 1 - state.moves_made),
        "legal_moves": [list(sq) for sq in legal],
        "outcome_round": state.final_round,
        "window": list(window),
        "deleted": [list(sq) for sq in deleted_window],
        "deleted_total": len(state.deleted),
    }


def build_session(payload: dict) -> Session:
    try:
        variant = AngelVariant(payload.get("variant", "unrestricted"))
    except ValueError:
        raise ValueError(f"unknown variant {payload.get('variant')!r}")
    sneak = int(payload.get("s", 0))
    devil_text = payload.get("devil", "big_sigma")
    devil = parse_devil(devil_text, sneak=sneak)
    preset = frozenset()
    if isinstance(devil, SigmaHatDevil):
        preset = wall_squares(devil.n, devil.m)
        default_horizon = sigma_hat_horizon(devil.n, devil.m)
    elif isinstance(devil, BigSigmaDevil):
        default_horizon = big_sigma_horizon(devil.n)
    else:
        default_horizon = 1000
    horizon = int(payload.get("horizon", default_horizon))
    config = GameConfig(
        variant=variant,
        sneak=sneak,
        preset_deleted=preset,
        horizon=horizon,
    )
    session = Session(uuid.uuid4().hex[:12], config, devil, devil_text)
    # With no opening burst the Devil deletes first, before any human input.
    session.play_devil_turns()
    return session


class PlayServer:
    """Session registry plus the threaded HTTP server around it."""

    def __init__(self, host: str = "127.0.0.1", port: int = 0, ui_dir: Optional[str] = None):
        self.sessions: dict[str, Session] = {}
        self.sessions_lock = threading.Lock()
        self.ui_dir = Path(ui_dir) if ui_dir else None
        handler = _make_handler(self)
        self.httpd = ThreadingHTTPServer((host, port), handler)
        self.port = self.httpd.server_address[1]
        self._thread: Optional[threading.Thread] = None

    def start_background(self) -> None:
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self._thread.start()

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def shutdown(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
        if self._thread:
            self._thread.join(timeout=5)

    def get_session(self, game_id: str) -> Optional[Session]:
        with self.sessions_lock:
            return self.sessions.get(game_id)

    def add_session(self, session: Session) -> None:
        with self.sessions_lock:
            self.sessions[session.game_id] = session

    def drop_session(self, game_id: str) -> bool:
        with self.sessions_lock:
            return self.sessions.pop(game_id, None) is not None


def _make_handler(server: PlayServer):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, code: int, payload, content_type="application/json") -> None:
            body = (
                json.dumps(payload).encode()
                if content_type == "application/json"
                else payload.encode()
                if isinstance(payload, str)
                else payload
            )
            self.send_response(code)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header(
                "Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"
            )
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()
            self.wfile.write(body)

        def _json_body(self) -> dict:
            length = int(self.headers.get("Content-Length", 0))
            if length == 0:
                return {}
            return json.loads(self.rfile.read(length).decode())

        def do_OPTIONS(self):
            self._send(204, b"", content_type="text/plain")

        def do_POST(self):
            path = urlparse(self.path).path
            try:
                payload = self._json_body()
            except (ValueError, json.JSONDecodeError):
                self._send(400, {"error": "invalid JSON body"})
                return
            if path == "/games":
                try:
                    session = build_session(payload)
                except (ValueError, KeyError) as exc:
                    self._send(400, {"error": str(exc)})
                    return
                server.add_session(session)
                with session.lock:
                    self._send(
                        201,
                        {
                            "game_id": session.game_id,
                            "pending_initial_moves": session.config.sneak + 1,
                            "state": _state_json(session),
                        },
                    )
                return
            parts = path.strip("/").split("/")
            if len(parts) == 3 and parts[0] == "games" and parts[2] == "angel-move":
                session = server.get_session(parts[1])
                if session is None:
                    self._send(404, {"error": "no such game"})
                    return
                to = payload.get("to")
                if not isinstance(to, list) or len(to) != 2:
                    self._send(400, {"error": 'body must be {"to":[x,y]}'})
                    return
                with session.lock:
                    try:
                        events = session.angel_move((int(to[0]), int(to[1])))
                    except GameError as exc:
                        self._send(409, {"error": str(exc), "state": _state_json(session)})
                        return
                    self._send(
                        200,
                        {
                            "state": _state_json(session),
                            "events": [_event_json(e) for e in events],
                        },
                    )
                return
            self._send(404, {"error": "unknown endpoint"})

        def do_GET(self):
            parsed = urlparse(self.path)
            path = parsed.path
            parts = path.strip("/").split("/")
            if len(parts) == 3 and parts[0] == "games":
                session = server.get_session(parts[1])
                if session is None:
                    self._send(404, {"error": "no such game"})
                    return
                if parts[2] == "state":
                    qs = parse_qs(parsed.query)
                    window = None
                    if all(k in qs for k in ("x0", "y0", "x1", "y1")):
                        window = tuple(int(qs[k][0]) for k in ("x0", "y0", "x1", "y1"))
                    with session.lock:
                        self._send(200, _state_json(session, window))
                    return
                if parts[2] == "trace":
                    with session.lock:
                        text = serialize_trace(session.trace())
                    self._send(200, text, content_type="application/x-ndjson")
                    return
            if self._maybe_serve_ui(path):
                return
            self._send(404, {"error": "unknown endpoint"})

        def do_DELETE(self):
            parts = urlparse(self.path).path.strip("/").split("/")
            if len(parts) == 2 and parts[0] == "games":
                if server.drop_session(parts[1]):
                    self._send(204, b"", content_type="text/plain")
                else:
                    self._send(404, {"error": "no such game"})
                return
            self._send(404, {"error": "unknown endpoint"})

        def _maybe_serve_ui(self, path: str) -> bool:
            if server.ui_dir is None:
                return False
            rel = "index.html" if path == "/" else path.lstrip("/")
            target = (server.ui_dir / rel).resolve()
            try:
                target.relative_to(server.ui_dir.resolve())
            except ValueError:
                return False
            if not target.is_file():
                return False
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self._send(200, target.read_bytes(), content_type=ctype)
            return True

    return Handler
