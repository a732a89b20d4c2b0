"""ASCII board rendering for traces and live states.

Characters: '#' deleted, 'A' true Angel position, 'a' last revealed position,
'.' intact. Rows print top-down with y decreasing, so up on the board is up
on the screen.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .game import GameState, initial_state, apply_angel_move, apply_devil_delete
from .trace import DevilDelete, Trace

Viewport = Tuple[int, int, int, int]  # x0, y0, x1, y1 inclusive


def last_revealed(state: GameState) -> tuple:
    """The most recent Angel position the Devil has been shown.

    Every move past the opening burst reveals one older move, so the Devil
    knows the first ``moves_made - sneak`` moves plus the start square.
    """
    return state.positions[max(0, state.moves_made - state.config.sneak)]


def state_at_round(trace: Trace, round_index: int) -> GameState:
    """Replay the trace up to (and including) the given Devil round."""
    if round_index < 0:
        raise ValueError("round must be >= 0")
    state = initial_state(trace.config)
    seen = 0
    for ev in trace.events:
        if isinstance(ev, DevilDelete):
            if seen == round_index:
                return state
            apply_devil_delete(state, ev.square)
            seen = ev.round
        else:
            apply_angel_move(state, ev.to)
    if round_index > seen:
        raise ValueError(f"trace has only {seen} devil rounds, asked for {round_index}")
    return state


def render_state(
    state: GameState,
    viewport: Optional[Viewport] = None,
    revealed: Optional[tuple] = None,
) -> str:
    """Draw the board window; the Angel marker wins over the deletion marker."""
    if viewport is None:
        ax, ay = state.angel
        viewport = (ax - 12, ay - 8, ax + 12, ay + 8)
    x0, y0, x1, y1 = viewport
    if x1 < x0 or y1 < y0:
        raise ValueError("empty viewport")
    angel = state.angel
    if revealed is None:
        revealed = last_revealed(state)
    deleted = state.deleted.raw
    lines = []
    for y in range(y1, y0 - 1, -1):
        row = []
        for x in range(x0, x1 + 1):
            sq = (x, y)
            if sq == angel:
                row.append("A")
            elif sq == revealed:
                row.append("a")
            elif sq in deleted:
                row.append("#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines)


def render_trace(trace: Trace, round_index: int, viewport: Optional[Viewport] = None) -> str:
    state = state_at_round(trace, round_index)
    revealed = last_revealed(state)
    header = (
        f"round {len(state.devil_moves)}: angel at {state.angel}, last revealed {revealed}, "
        f"{len(state.deleted)} deleted, {state.status.value}"
    )
    return header + "\n" + render_state(state, viewport, revealed)
